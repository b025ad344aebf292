use std::fmt::Write;

use sumbound::sweep::SweepResult;

/// Formats `v` with `sig` significant digits, trailing zeros trimmed, like C's
/// `%.{sig}g`. Always uses `.` as the decimal separator.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("theta,lhs,cb_bound,tb_bound\n");
    for row in &result.rows {
        let cells = [row.theta, row.lhs, row.cb_bound, row.tb_bound].map(|v| format_sig(v, 12));
        writeln!(out, "{}", cells.join(",")).expect("writing to a String");
    }
    out
}
