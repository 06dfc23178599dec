//! Deterministic CSV field formatting: '.' decimal separator, 17
//! significant digits, `nan` for undefined values, no locale dependence.

pub fn float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn opt_float(x: Option<f64>) -> String {
    match x {
        Some(v) => float(v),
        None => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_are_stable() {
        assert_eq!(float(0.5), "5.0000000000000000e-1");
        assert_eq!(float(2.0), "2.0000000000000000e0");
        assert_eq!(float(f64::NAN), "nan");
        assert_eq!(opt_float(None), "");
    }
}
