/// Scientific notation with 12 significant digits; exact zero prints as `0`.
pub fn sci(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.11e}")
    }
}
