//! CSV serialization of reports. Floats are written with 17 significant
//! digits so that parsing them back reproduces the exact values.

use std::io::{self, Write};

use crate::verify::compare::CompareRow;
use crate::verify::fuzz::VerificationReport;

pub const VERIFY_HEADER: &str = "trial,alpha,lambda,s,q,fn,a,b,lhs,rhs,ratio,violation";
pub const COMPARE_HEADER: &str = "alpha,lambda,s,q,bound_new,bound_classical,ratio,anomaly";
pub const COEFFS_HEADER: &str = "name,value";

/// `x` with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn write_verify_csv<W: Write>(mut w: W, report: &VerificationReport) -> io::Result<()> {
    writeln!(w, "{VERIFY_HEADER}")?;
    for r in &report.records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.trial,
            fmt_f64(r.alpha),
            fmt_f64(r.lambda),
            fmt_f64(r.s),
            fmt_f64(r.q),
            quote(&r.fn_id),
            fmt_f64(r.a),
            fmt_f64(r.b),
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.ratio),
            r.violation
        )?;
    }
    Ok(())
}

pub fn write_compare_csv<W: Write>(mut w: W, rows: &[CompareRow]) -> io::Result<()> {
    writeln!(w, "{COMPARE_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(r.alpha),
            fmt_f64(r.lambda),
            fmt_f64(r.s),
            fmt_f64(r.q),
            fmt_f64(r.bound_new),
            fmt_f64(r.bound_classical),
            fmt_f64(r.ratio),
            r.anomaly
        )?;
    }
    Ok(())
}

pub fn write_coeffs_csv<W: Write>(mut w: W, entries: &[(String, f64)]) -> io::Result<()> {
    writeln!(w, "{COEFFS_HEADER}")?;
    for (name, v) in entries {
        writeln!(w, "{},{}", quote(name), fmt_f64(*v))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [1.0 / 3.0, 29.0 / 1296.0, 1e-300, 123456.789, 0.1 + 0.2, -2.5e-17] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
    }

    #[test]
    fn coeffs_layout() {
        let mut buf = Vec::new();
        write_coeffs_csv(&mut buf, &[("gamma2".into(), 5.0 / 72.0)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("name,value"));
        let (n, v) = lines.next().unwrap().split_once(',').unwrap();
        assert_eq!(n, "gamma2");
        assert_eq!(v.parse::<f64>().unwrap(), 5.0 / 72.0);
    }
}
