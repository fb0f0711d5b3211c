//! Plain-text rendering. Complex numbers use six significant digits in
//! `a+bi` form; parts below the absolute tolerance print as `0`.

use std::fmt::Write;

use crossprod::numkit::{CMatrix, C64};

pub fn fmt_real(x: f64, chop: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.abs() <= chop || x == 0.0 {
        return "0".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.5e}");
    let e: i32 = sci.split_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-5..6).contains(&e) {
        let dec = (5 - e) as usize;
        format!("{x:.dec$}")
    } else {
        sci
    }
}

pub fn fmt_c64(z: C64, chop: f64) -> String {
    let re = fmt_real(z.re, chop);
    let im = fmt_real(z.im, chop);
    match im.strip_prefix('-') {
        Some(mag) => format!("{re}-{mag}i"),
        None => format!("{re}+{im}i"),
    }
}

pub fn fmt_matrix(m: &CMatrix, chop: f64, indent: &str) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| fmt_c64(m.get(i, j), chop)).collect()).collect();
    let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        out.push_str(indent);
        for (j, c) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{c:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn fmt_spectrum(spec: &[(C64, usize)], chop: f64) -> String {
    spec.iter().map(|(z, k)| format!("{} (×{k})", fmt_c64(*z, chop))).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_real(1.0, 0.0), "1.00000");
        assert_eq!(fmt_real(-0.5, 0.0), "-0.500000");
        assert_eq!(fmt_real(123456.7, 0.0), "123457");
        assert_eq!(fmt_real(9.999996, 0.0), "10.0000");
        assert_eq!(fmt_real(1.5e-7, 0.0), "1.50000e-7");
        assert_eq!(fmt_real(2.5e9, 0.0), "2.50000e9");
    }

    #[test]
    fn negative_zero_and_noise_print_as_zero() {
        assert_eq!(fmt_real(-0.0, 0.0), "0");
        assert_eq!(fmt_real(-3e-17, 1e-9), "0");
        assert_eq!(fmt_c64(C64::new(-0.0, -1e-18), 1e-9), "0+0i");
    }

    #[test]
    fn complex_sign_handling() {
        assert_eq!(fmt_c64(C64::new(0.5, -0.8660254037844386), 1e-9), "0.500000-0.866025i");
        assert_eq!(fmt_c64(C64::new(-1.0, 2.0), 1e-9), "-1.00000+2.00000i");
    }
}
