//! Trace emission: CSV and JSON-lines, one record per sample, identical
//! field sets. Floats go through the shortest round-trip formatter so a
//! fixed scenario produces byte-identical files.

use std::fmt::Write as _;

/// One output record. Optional fields serialize as empty CSV cells and
/// JSON nulls when not applicable to the run kind.
#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub t: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub concurrence: f64,
    pub mee: f64,
    pub mee_singular: Option<bool>,
    pub entropy: f64,
    pub purity: f64,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub alpha: Option<f64>,
    pub fidelity_phi1: Option<f64>,
}

pub const CSV_HEADER: &str =
    "t,a,b,c,d,concurrence,mee,mee_singular,entropy,purity,C1,C2,C3,alpha,fidelity_phi1";

fn push_opt(line: &mut String, v: Option<f64>) {
    if let Some(v) = v {
        let _ = write!(line, "{v}");
    }
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(rows.len() * 96 + 128);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let mut line = String::with_capacity(96);
        let _ = write!(
            line,
            "{},{},{},{},{},{},{},",
            r.t, r.a, r.b, r.c, r.d, r.concurrence, r.mee
        );
        if let Some(s) = r.mee_singular {
            line.push(if s { '1' } else { '0' });
        }
        let _ = write!(line, ",{},{},", r.entropy, r.purity);
        push_opt(&mut line, r.c1);
        line.push(',');
        push_opt(&mut line, r.c2);
        line.push(',');
        push_opt(&mut line, r.c3);
        line.push(',');
        push_opt(&mut line, r.alpha);
        line.push(',');
        push_opt(&mut line, r.fidelity_phi1);
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn json_num(v: f64) -> String {
    // serde_json also uses ryu; inline to keep this file dependency-free.
    format!("{v}")
}

fn json_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_string(), json_num)
}

pub fn to_jsonl(rows: &[Row]) -> String {
    let mut out = String::with_capacity(rows.len() * 220);
    for r in rows {
        let singular = match r.mee_singular {
            Some(true) => "true",
            Some(false) => "false",
            None => "null",
        };
        let _ = writeln!(
            out,
            concat!(
                "{{\"t\":{},\"a\":{},\"b\":{},\"c\":{},\"d\":{},",
                "\"concurrence\":{},\"mee\":{},\"mee_singular\":{},",
                "\"entropy\":{},\"purity\":{},\"C1\":{},\"C2\":{},\"C3\":{},",
                "\"alpha\":{},\"fidelity_phi1\":{}}}"
            ),
            json_num(r.t),
            json_num(r.a),
            json_num(r.b),
            json_num(r.c),
            json_num(r.d),
            json_num(r.concurrence),
            json_num(r.mee),
            singular,
            json_num(r.entropy),
            json_num(r.purity),
            json_opt(r.c1),
            json_opt(r.c2),
            json_opt(r.c3),
            json_opt(r.alpha),
            json_opt(r.fidelity_phi1),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> Row {
        Row {
            t: 0.5,
            a: 1.0,
            b: -0.25,
            c: 0.125,
            d: -1e-3,
            concurrence: 0.75,
            mee: 0.8,
            mee_singular: Some(false),
            entropy: 0.1,
            purity: 0.9,
            c1: Some(0.5),
            c2: None,
            c3: Some(-0.5),
            alpha: None,
            fidelity_phi1: None,
        }
    }

    #[test]
    fn csv_shape() {
        let text = to_csv(&[row()]);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let data = lines.next().unwrap();
        assert_eq!(data.split(',').count(), 15);
        assert_eq!(data, "0.5,1,-0.25,0.125,-0.001,0.75,0.8,0,0.1,0.9,0.5,,-0.5,,");
    }

    #[test]
    fn jsonl_parses_back() {
        let text = to_jsonl(&[row()]);
        let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(v["t"], 0.5);
        assert_eq!(v["C2"], serde_json::Value::Null);
        assert_eq!(v["mee_singular"], false);
    }
}
