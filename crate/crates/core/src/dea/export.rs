use super::batch::FarmEvaluation;
use crate::data::Dataset;

/// Pretty JSON array with one record per farm. Successful records carry every
/// [`DeaResult`](super::DeaResult) field; failed ones are `{farm_id, error}`.
pub fn results_to_json(results: &[FarmEvaluation]) -> String {
    let mut s = serde_json::to_string_pretty(results).expect("results serialize");
    s.push('\n');
    s
}

pub fn results_from_json(text: &str) -> Result<Vec<FarmEvaluation>, serde_json::Error> {
    serde_json::from_str(text)
}

fn label<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// Flat CSV, λ omitted. Peers are joined with `;`.
pub fn results_to_csv(d: &Dataset, results: &[FarmEvaluation]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = [
        "farm_id",
        "theta_ccr",
        "theta_bcc",
        "scale_efficiency",
        "sum_lambda",
        "sum_lambda_min",
        "sum_lambda_max",
        "rts",
        "ccr_status",
        "bcc_status",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend(d.input_names().iter().map(|n| format!("slack_{n}")));
    header.extend(d.output_names().iter().map(|n| format!("slack_{n}")));
    header.extend(d.input_names().iter().map(|n| format!("target_{n}")));
    header.extend(d.output_names().iter().map(|n| format!("target_{n}")));
    header.push("peers".into());
    header.push("error".into());
    let width = header.len();
    w.write_record(&header)?;

    for e in results {
        let mut rec: Vec<String> = Vec::with_capacity(width);
        match e {
            FarmEvaluation::Ok(r) => {
                rec.push(r.farm_id.clone());
                for v in [
                    r.theta_ccr,
                    r.theta_bcc,
                    r.scale_efficiency,
                    r.sum_lambda,
                    r.sum_lambda_min,
                    r.sum_lambda_max,
                ] {
                    rec.push(v.to_string());
                }
                rec.push(r.rts.to_string());
                rec.push(label(&r.ccr_status));
                rec.push(label(&r.bcc_status));
                let numbers = r
                    .input_slacks
                    .iter()
                    .chain(&r.output_slacks)
                    .chain(&r.projection.inputs)
                    .chain(&r.projection.outputs);
                rec.extend(numbers.map(|v| v.to_string()));
                rec.push(r.peers.join(";"));
                rec.push(String::new());
            }
            FarmEvaluation::Failed { farm_id, error } => {
                rec.push(farm_id.clone());
                rec.resize(width - 1, String::new());
                rec.push(error.clone());
            }
        }
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
