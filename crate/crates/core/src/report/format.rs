/// Rounds half away from zero at `decimals` places.
///
/// Rounding is done on the shortest decimal representation of the value, so
/// a value written as `0.405` renders as `0.41` even though the nearest
/// binary double lies slightly below it.
pub fn format_fixed(value: f64, decimals: usize) -> String {
    if value.is_nan() {
        return "na".into();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let text = format!("{}", value.abs());
    let (int_part, frac_part) = text.split_once('.').unwrap_or((&text, ""));
    let mut digits: Vec<u8> = int_part.bytes().chain(frac_part.bytes().take(decimals)).collect();
    digits.extend(std::iter::repeat_n(b'0', decimals.saturating_sub(frac_part.len())));
    if frac_part.as_bytes().get(decimals).is_some_and(|d| *d >= b'5') {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, b'1');
                break;
            }
            i -= 1;
            if digits[i] == b'9' {
                digits[i] = b'0';
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let split = digits.len() - decimals;
    let mut out = String::from_utf8(digits[..split].to_vec()).expect("ascii digits");
    if decimals > 0 {
        out.push('.');
        out.push_str(std::str::from_utf8(&digits[split..]).expect("ascii digits"));
    }
    if value < 0.0 && out.bytes().any(|b| (b'1'..=b'9').contains(&b)) {
        out.insert(0, '-');
    }
    out
}

/// Regression statistics: 4 decimals, or scientific notation when the
/// magnitude is below `1e-4`.
pub fn format_stat(value: f64) -> String {
    if value != 0.0 && value.is_finite() && value.abs() < 1e-4 {
        format!("{value:.2e}")
    } else {
        format_fixed(value, 4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_away_from_zero() {
        assert_eq!(format_fixed(0.405, 2), "0.41");
        assert_eq!(format_fixed(-0.405, 2), "-0.41");
        assert_eq!(format_fixed(0.404999, 2), "0.40");
        assert_eq!(format_fixed(0.995, 2), "1.00");
        assert_eq!(format_fixed(9.96, 1), "10.0");
        assert_eq!(format_fixed(2.5, 0), "3");
        assert_eq!(format_fixed(0.4166666, 2), "0.42");
        assert_eq!(format_fixed(7.4074, 1), "7.4");
    }

    #[test]
    fn padding_and_signs() {
        assert_eq!(format_fixed(1.0, 2), "1.00");
        assert_eq!(format_fixed(0.0, 3), "0.000");
        assert_eq!(format_fixed(-0.001, 2), "0.00");
        assert_eq!(format_fixed(1234.5, 0), "1235");
        assert_eq!(format_fixed(1e-20, 2), "0.00");
        assert_eq!(format_fixed(f64::NAN, 2), "na");
    }

    #[test]
    fn stats() {
        assert_eq!(format_stat(0.41214957), "0.4121");
        assert_eq!(format_stat(-0.829), "-0.8290");
        assert_eq!(format_stat(1.6603695e-19), "1.66e-19");
        assert_eq!(format_stat(0.0), "0.0000");
        assert_eq!(format_stat(0.00012), "0.0001");
    }
}
