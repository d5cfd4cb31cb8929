//! State specifiers such as `ghz:n=3,split=1` or `file:rho.json`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use ppt_moments::linalg::DensityJson;
use ppt_moments::states::{self, ButterflyParams};
use ppt_moments::DensityMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Bell,
    Ghz { n: usize, split: usize },
    Werner { p: f64 },
    Butterfly { t: f64, j: f64, a: f64, split: usize, bits: Vec<u8>, v: (usize, usize) },
    Random { da: usize, db: usize, seed: u64, rank: Option<usize> },
    File(PathBuf),
}

struct Params<'a> {
    family: &'a str,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn parse(family: &'a str, body: &'a str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in body.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| anyhow!("expected key=value in `{item}` for {family}"))?;
            let k = k.trim();
            if pairs.iter().any(|(seen, _)| *seen == k) {
                bail!("duplicate key `{k}` for {family}");
            }
            pairs.push((k, v.trim()));
        }
        Ok(Self { family, pairs })
    }

    fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.pairs.iter().position(|(k, _)| *k == key) {
            None => Ok(None),
            Some(i) => {
                let (_, raw) = self.pairs.remove(i);
                raw.parse()
                    .map(Some)
                    .map_err(|e| anyhow!("bad value `{raw}` for {}.{key}: {e}", self.family))
            }
        }
    }

    fn finish(self) -> Result<()> {
        match self.pairs.first() {
            None => Ok(()),
            Some((k, _)) => bail!("unknown parameter `{k}` for {}", self.family),
        }
    }
}

fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(anyhow!("bit string `{s}` may only contain 0 and 1")),
        })
        .collect()
}

/// `1-2` with 1-based qubit labels.
fn parse_sites(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once('-').ok_or_else(|| anyhow!("sites `{s}` should look like 1-2"))?;
    let a: usize = a.parse().context("site label")?;
    let b: usize = b.parse().context("site label")?;
    if a == 0 || b == 0 {
        bail!("site labels start at 1");
    }
    Ok((a - 1, b - 1))
}

impl FromStr for StateSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, body) = s.split_once(':').unwrap_or((s, ""));
        if family == "file" {
            if body.is_empty() {
                bail!("file: needs a path");
            }
            return Ok(StateSpec::File(PathBuf::from(body)));
        }
        let mut p = Params::parse(family, body)?;
        let spec = match family {
            "bell" => StateSpec::Bell,
            "ghz" => StateSpec::Ghz { n: p.take("n")?.unwrap_or(3), split: p.take("split")?.unwrap_or(1) },
            "werner" => StateSpec::Werner { p: p.take("p")?.ok_or_else(|| anyhow!("werner needs p=<value>"))? },
            "butterfly" => {
                let bits = match p.take::<String>("bits")? {
                    Some(b) => parse_bits(&b)?,
                    None => vec![1, 0, 1, 1],
                };
                let v = match p.take::<String>("v")? {
                    Some(v) => parse_sites(&v)?,
                    None => (0, 1),
                };
                StateSpec::Butterfly {
                    t: p.take("t")?.unwrap_or(0.0),
                    j: p.take("j")?.unwrap_or(1.0),
                    a: p.take("a")?.unwrap_or(1.0),
                    split: p.take("split")?.unwrap_or(bits.len() / 2),
                    bits,
                    v,
                }
            }
            "random" => StateSpec::Random {
                da: p.take("da")?.unwrap_or(2),
                db: p.take("db")?.unwrap_or(2),
                seed: p.take("seed")?.unwrap_or(0),
                rank: p.take("rank")?,
            },
            other => bail!("unknown state family `{other}` (expected bell, ghz, werner, butterfly, random or file)"),
        };
        p.finish()?;
        Ok(spec)
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Bell => write!(f, "bell"),
            StateSpec::Ghz { n, split } => write!(f, "ghz:n={n},split={split}"),
            StateSpec::Werner { p } => write!(f, "werner:p={p}"),
            StateSpec::Butterfly { t, j, a, split, bits, v } => {
                let bits: String = bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
                write!(f, "butterfly:t={t},j={j},a={a},split={split},bits={bits},v={}-{}", v.0 + 1, v.1 + 1)
            }
            StateSpec::Random { da, db, seed, rank } => {
                write!(f, "random:da={da},db={db},seed={seed}")?;
                if let Some(r) = rank {
                    write!(f, ",rank={r}")?;
                }
                Ok(())
            }
            StateSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityMatrix> {
        let rho = match self {
            StateSpec::Bell => states::bell_state(),
            StateSpec::Ghz { n, split } => states::ghz(*n, *split)?,
            StateSpec::Werner { p } => states::werner(*p)?,
            StateSpec::Butterfly { t, j, a, split, bits, v } => {
                let params = ButterflyParams {
                    coupling: *j,
                    spacing: *a,
                    positions: (0..bits.len()).map(|i| i as f64).collect(),
                    t: *t,
                    initial_bits: bits.clone(),
                    v_sites: *v,
                    split: *split,
                };
                states::butterfly_state(&params)?
            }
            StateSpec::Random { da, db, seed, rank } => match rank {
                Some(r) => states::random_density_with_rank(*da, *db, *r, *seed)?,
                None => states::random_density(*da, *db, *seed)?,
            },
            StateSpec::File(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let json: DensityJson =
                    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                DensityMatrix::try_from(json)?
            }
        };
        Ok(rho)
    }

    /// Copy with one continuous parameter replaced, for scans.
    pub fn with_param(&self, name: &str, value: f64) -> Result<StateSpec> {
        let mut out = self.clone();
        match (&mut out, name) {
            (StateSpec::Werner { p }, "p") => *p = value,
            (StateSpec::Butterfly { t, .. }, "t") => *t = value,
            (StateSpec::Butterfly { j, .. }, "j") => *j = value,
            (StateSpec::Butterfly { a, .. }, "a") => *a = value,
            _ => bail!("`{name}` is not a scannable parameter of {}", self.family()),
        }
        Ok(out)
    }

    pub fn family(&self) -> &'static str {
        match self {
            StateSpec::Bell => "bell",
            StateSpec::Ghz { .. } => "ghz",
            StateSpec::Werner { .. } => "werner",
            StateSpec::Butterfly { .. } => "butterfly",
            StateSpec::Random { .. } => "random",
            StateSpec::File(_) => "file",
        }
    }
}

/// Scan grid `lo:hi:step`; points are `lo + i·step` up to `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl FromStr for Range {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts[..] else {
            bail!("range `{s}` should be lo:hi:step");
        };
        let num = |x: &str| x.trim().parse::<f64>().with_context(|| format!("bad number `{x}` in range"));
        let r = Range { lo: num(lo)?, hi: num(hi)?, step: num(step)? };
        if !(r.lo.is_finite() && r.hi.is_finite() && r.step.is_finite()) {
            bail!("range bounds must be finite");
        }
        if r.hi < r.lo {
            bail!("range upper bound below lower bound");
        }
        if r.step <= 0.0 && r.hi > r.lo {
            bail!("range step must be positive");
        }
        Ok(r)
    }
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        if self.hi == self.lo {
            return vec![self.lo];
        }
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_forms() {
        assert_eq!("bell".parse::<StateSpec>().unwrap(), StateSpec::Bell);
        assert_eq!("ghz:n=3,split=1".parse::<StateSpec>().unwrap(), StateSpec::Ghz { n: 3, split: 1 });
        assert_eq!("werner:p=0.75".parse::<StateSpec>().unwrap(), StateSpec::Werner { p: 0.75 });
        assert_eq!(
            "random:da=2,db=2,seed=7".parse::<StateSpec>().unwrap(),
            StateSpec::Random { da: 2, db: 2, seed: 7, rank: None }
        );
        match "butterfly:t=1.2".parse::<StateSpec>().unwrap() {
            StateSpec::Butterfly { t, split, bits, v, .. } => {
                assert_eq!(t, 1.2);
                assert_eq!(split, 2);
                assert_eq!(bits, vec![1, 0, 1, 1]);
                assert_eq!(v, (0, 1));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!("file:/tmp/x.json".parse::<StateSpec>().unwrap(), StateSpec::File("/tmp/x.json".into()));
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["nope", "werner", "werner:p=abc", "ghz:m=3", "bell:x=1", "ghz:n=3,n=4", "file:", "butterfly:bits=102"] {
            assert!(bad.parse::<StateSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["bell", "ghz:n=4,split=2", "werner:p=0.25", "random:da=2,db=3,seed=9,rank=2"] {
            let spec: StateSpec = s.parse().unwrap();
            assert_eq!(spec.to_string().parse::<StateSpec>().unwrap(), spec);
        }
        let b: StateSpec = "butterfly:t=0.5,v=2-3".parse().unwrap();
        assert_eq!(b.to_string().parse::<StateSpec>().unwrap(), b);
    }

    #[test]
    fn scan_parameters() {
        let w: StateSpec = "werner:p=0".parse().unwrap();
        assert_eq!(w.with_param("p", 0.4).unwrap(), StateSpec::Werner { p: 0.4 });
        assert!(w.with_param("t", 0.4).is_err());
        assert!(StateSpec::Bell.with_param("p", 0.1).is_err());
    }

    #[test]
    fn range_points() {
        let r: Range = "0:1:0.05".parse().unwrap();
        let pts = r.points();
        assert_eq!(pts.len(), 21);
        assert_eq!(pts[20], 20.0 * 0.05);
        assert_eq!("0.3:0.3:0.1".parse::<Range>().unwrap().points(), vec![0.3]);
        assert!("1:0:0.1".parse::<Range>().is_err());
        assert!("0:1:0".parse::<Range>().is_err());
        assert!("0:1".parse::<Range>().is_err());
    }
}
