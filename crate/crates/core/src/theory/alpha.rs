use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TheoryError;

/// An exact positive rational exponent, so that boundary tests and density
/// comparisons never round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alpha(Ratio<i64>);

impl Alpha {
    pub fn new(numer: i64, denom: i64) -> Result<Self, TheoryError> {
        if denom == 0 || numer == 0 || (numer < 0) != (denom < 0) {
            return Err(TheoryError::Domain(format!(
                "{numer}/{denom} is not a positive rational"
            )));
        }
        Ok(Alpha(Ratio::new(numer, denom)))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn recip(&self) -> Alpha {
        Alpha(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts the string forms of [`FromStr`] or a JSON number, read through
/// its shortest decimal representation.
impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Text(t) => t,
            Raw::Number(x) => x.to_string(),
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Accepts `a/b`, integers, and finite decimals such as `0.45` (read as 9/20).
impl FromStr for Alpha {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TheoryError::Domain(format!("cannot read {s:?} as a positive rational"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            return Alpha::new(a, b);
        }
        let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: i64 = if whole.is_empty() {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let denom = 10i64.pow(frac.len() as u32);
        let frac: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let numer = whole
            .checked_mul(denom)
            .and_then(|w| w.checked_add(frac))
            .ok_or_else(bad)?;
        Alpha::new(numer, denom)
    }
}

/// `(1 + k) / (1 + 2k)`.
fn regime_edge(k: i64) -> Ratio<i64> {
    Ratio::new(1 + k, 1 + 2 * k)
}

/// Largest integer `k ≥ 0` with `α < (1 + k)/(1 + 2k)`, for `α ∈ (1/2, 1)`.
/// Since the edges decrease to 1/2 this is `⌈(1 − α)/(2α − 1)⌉ − 1`.
pub fn k_alpha(alpha: Alpha) -> Result<i64, TheoryError> {
    let a = alpha.0;
    let half = Ratio::new(1, 2);
    let one = Ratio::from_integer(1);
    if a <= half || a >= one {
        return Err(TheoryError::Domain(format!(
            "k_alpha needs alpha in (1/2, 1), got {alpha}"
        )));
    }
    let bound = (one - a) / (a + a - one);
    Ok(bound.ceil().to_integer() - 1)
}

/// True for `α = (1 + k)/(1 + 2k)`, `k ≥ 0`.
pub fn is_boundary(alpha: Alpha) -> bool {
    let a = alpha.0;
    let half = Ratio::new(1, 2);
    let one = Ratio::from_integer(1);
    if a <= half || a > one {
        return false;
    }
    if a == one {
        return true;
    }
    let bound = (one - a) / (a + a - one);
    bound.is_integer() && regime_edge(bound.to_integer()) == a
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SparsePrediction {
    pub alpha: Alpha,
    pub k_alpha: Option<i64>,
    /// Exact limit of `X_n / n`.
    pub limit_exact: String,
    pub limit: f64,
}

/// Limit of `X_n / n` at `p = n^{−α}` in the two covered regimes.
pub fn sparse_limit(alpha: Alpha) -> Result<SparsePrediction, TheoryError> {
    let a = alpha.0;
    let one = Ratio::from_integer(1);
    if a > one {
        return Err(TheoryError::Domain(format!(
            "alpha = {alpha} > 1 is the very sparse regime; use gamma_c"
        )));
    }
    if is_boundary(alpha) {
        return Err(TheoryError::Boundary(alpha.to_string()));
    }
    let (k, limit) = if a <= Ratio::new(1, 2) {
        (None, a.recip())
    } else {
        let k = k_alpha(alpha)?;
        (Some(k), Ratio::new(1 + 2 * k, 1 + k))
    };
    Ok(SparsePrediction {
        alpha,
        k_alpha: k,
        limit_exact: Alpha(limit).to_string(),
        limit: *limit.numer() as f64 / *limit.denom() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Alpha {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(a("0.45"), Alpha::new(9, 20).unwrap());
        assert_eq!(a("5/2"), Alpha::new(5, 2).unwrap());
        assert_eq!(a("2"), Alpha::new(2, 1).unwrap());
        assert_eq!(a(".9").to_string(), "9/10");
        assert!("0".parse::<Alpha>().is_err());
        assert!("-1/2".parse::<Alpha>().is_err());
        assert!("x".parse::<Alpha>().is_err());
    }

    #[test]
    fn json_forms() {
        let v: Vec<Alpha> = serde_json::from_str(r#"["2/5", 0.45, 2]"#).unwrap();
        assert_eq!(v, vec![a("2/5"), a("9/20"), a("2")]);
        assert_eq!(serde_json::to_string(&v[1]).unwrap(), r#""9/20""#);
    }

    #[test]
    fn k_alpha_by_scan() {
        // brute-force the defining inequality over k = 0..200
        for s in ["0.9", "0.7", "0.65", "0.6", "0.55", "0.51", "3/4"] {
            let al = a(s);
            let scan = (0..200).filter(|&k| al.0 < regime_edge(k)).max().unwrap();
            assert_eq!(k_alpha(al).unwrap(), scan, "alpha = {s}");
        }
        assert_eq!(k_alpha(a("0.9")).unwrap(), 0);
        assert_eq!(k_alpha(a("0.6")).unwrap(), 1);
        assert_eq!(k_alpha(a("0.65")).unwrap(), 1);
    }

    #[test]
    fn limits() {
        let p = sparse_limit(a("0.9")).unwrap();
        assert_eq!((p.k_alpha, p.limit), (Some(0), 1.0));
        let p = sparse_limit(a("0.65")).unwrap();
        assert_eq!((p.k_alpha, p.limit_exact.as_str()), (Some(1), "3/2"));
        let p = sparse_limit(a("0.4")).unwrap();
        assert_eq!(p.limit, 2.5);
        let p = sparse_limit(a("0.45")).unwrap();
        assert_eq!(p.limit_exact, "20/9");
        assert_eq!(sparse_limit(a("1/2")).unwrap().limit, 2.0);
    }

    #[test]
    fn boundaries_are_flagged() {
        for s in ["1", "2/3", "3/5", "4/7"] {
            assert!(is_boundary(a(s)), "{s}");
            assert!(matches!(sparse_limit(a(s)), Err(TheoryError::Boundary(_))));
        }
        assert!(!is_boundary(a("0.65")));
        assert!(sparse_limit(a("2")).is_err());
    }
}
