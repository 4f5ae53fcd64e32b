use std::fmt;
use std::str::FromStr;

/// The four interval constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    ClopperPearson,
    Wald,
    WilsonDirect,
    WilsonIndirect,
}

impl Method {
    /// Canonical output order.
    pub const ALL: [Method; 4] = [
        Method::ClopperPearson,
        Method::Wald,
        Method::WilsonDirect,
        Method::WilsonIndirect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::ClopperPearson => "clopper-pearson",
            Method::Wald => "wald",
            Method::WilsonDirect => "wilson-direct",
            Method::WilsonIndirect => "wilson-indirect",
        }
    }

    /// Whether endpoints are guaranteed to stay inside [0, 1].
    pub fn is_range_preserving(self) -> bool {
        !matches!(self, Method::Wald)
    }

    /// Parses a comma-separated list, accepting `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Method>, UnknownMethod> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                out.extend(Method::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(UnknownMethod(s.to_string()));
        }
        Ok(out)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error(
    "unknown method `{0}` (expected clopper-pearson, wald, wilson-direct, wilson-indirect or all)"
)]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "clopper-pearson" | "cp" | "exact" => Ok(Method::ClopperPearson),
            "wald" => Ok(Method::Wald),
            "wilson-direct" | "wd" => Ok(Method::WilsonDirect),
            "wilson-indirect" | "wi" | "wilson" => Ok(Method::WilsonIndirect),
            _ => Err(UnknownMethod(s.to_string())),
        }
    }
}

/// A two-sided `(1 - alpha)` confidence interval on the F1 scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceInterval {
    pub method: Method,
    pub alpha: f64,
    pub lower: f64,
    pub upper: f64,
}

impl ConfidenceInterval {
    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }

    /// Closed-interval membership.
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn overshoots(&self) -> bool {
        self.lower < 0.0 || self.upper > 1.0
    }

    pub fn is_degenerate(&self) -> bool {
        self.length() == 0.0
    }

    /// `self` contains `other` (used for nesting checks across alpha).
    pub fn covers(&self, other: &ConfidenceInterval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("bootstrap".parse::<Method>().is_err());
    }

    #[test]
    fn parse_lists() {
        assert_eq!(Method::parse_list("all").unwrap(), Method::ALL.to_vec());
        assert_eq!(
            Method::parse_list("wilson-indirect, wald").unwrap(),
            vec![Method::Wald, Method::WilsonIndirect]
        );
        assert!(Method::parse_list("").is_err());
        assert!(Method::parse_list("wald,nope").is_err());
    }
}
