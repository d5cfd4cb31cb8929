use anyhow::Result;
use serde::Serialize;

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Header from the record field names; floats use the shortest
/// round-trip representation.
pub fn csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        k: usize,
        v: f64,
        first: Option<usize>,
    }

    #[test]
    fn csv_round_trip_floats() {
        let out = csv([Row { k: 1, v: 0.1, first: None }, Row { k: 2, v: -1.0 / 3.0, first: Some(3) }]).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "k,v,first");
        assert_eq!(lines[1], "1,0.1,");
        let v: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, -1.0 / 3.0);
    }
}
