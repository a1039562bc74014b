use std::fmt;
use std::str::FromStr;

use crate::bounds::case::CaseId;

/// Which inequality produced a [`Bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Power-mean estimate for s-convex `|f'|^q`, `q >= 1`.
    PowerMean,
    /// Hoelder estimate for s-convex `|f'|^q`, `q > 1`.
    HolderConvex,
    /// Hoelder estimate for s-concave `|f'|^q`, `q > 1`.
    HolderConcave,
    /// Earlier midpoint bound for s-convex `|f'|^q` (power mean).
    PriorMidpointPowerMean,
    /// Earlier midpoint bound for s-convex `|f'|^q` (Hoelder).
    PriorMidpointHolder,
    /// Earlier Simpson bound for s-convex `|f'|^q` (Hoelder).
    PriorSimpsonHolder,
    /// Earlier trapezoid bound for s-convex `|f'|^q`, `s < 1` (Hoelder).
    PriorTrapezoidHolder,
    /// Earlier three-point bound for convex `|f'|^q` (the `s = 1` predecessor).
    ConvexPowerMean,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::PowerMean,
        Method::HolderConvex,
        Method::HolderConcave,
        Method::PriorMidpointPowerMean,
        Method::PriorMidpointHolder,
        Method::PriorSimpsonHolder,
        Method::PriorTrapezoidHolder,
        Method::ConvexPowerMean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::PowerMean => "power-mean",
            Method::HolderConvex => "holder-convex",
            Method::HolderConcave => "holder-concave",
            Method::PriorMidpointPowerMean => "prior-midpoint-power-mean",
            Method::PriorMidpointHolder => "prior-midpoint-holder",
            Method::PriorSimpsonHolder => "prior-simpson-holder",
            Method::PriorTrapezoidHolder => "prior-trapezoid-holder",
            Method::ConvexPowerMean => "convex-power-mean",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Method::ALL.iter().map(|m| m.name()).collect();
                format!("unknown method `{s}` (expected one of {})", names.join(", "))
            })
    }
}

const SCALE: &str = "scale";
const TERM: &str = "term:";

/// A computed right-hand side.
///
/// `components` always starts with `("scale", k)` followed by the summed
/// `term:*` entries; `value == k * sum(terms)`. Entries prefixed `coef:`
/// record the coefficients that fed the terms and do not enter the sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub value: f64,
    pub method: Method,
    pub case_id: CaseId,
    pub components: Vec<(String, f64)>,
    /// Value of every case evaluated when the parameters sit on a case
    /// boundary; a single entry otherwise.
    pub candidates: Vec<(CaseId, f64)>,
}

impl Bound {
    pub(crate) fn assemble(
        method: Method,
        case_id: CaseId,
        scale: f64,
        terms: &[(&str, f64)],
        coefs: &[(&str, f64)],
    ) -> Bound {
        let mut components = Vec::with_capacity(1 + terms.len() + coefs.len());
        components.push((SCALE.to_string(), scale));
        components.extend(terms.iter().map(|(l, v)| (format!("{TERM}{l}"), *v)));
        components.extend(coefs.iter().map(|(l, v)| (format!("coef:{l}"), *v)));
        let mut b = Bound { value: 0.0, method, case_id, components, candidates: Vec::new() };
        b.value = b.recombine();
        b.candidates.push((case_id, b.value));
        b
    }

    /// Recomputes the value from `components`.
    pub fn recombine(&self) -> f64 {
        let scale = self
            .components
            .iter()
            .find(|(l, _)| l == SCALE)
            .map(|(_, v)| *v)
            .unwrap_or(1.0);
        let sum: f64 = self
            .components
            .iter()
            .filter(|(l, _)| l.starts_with(TERM))
            .map(|(_, v)| *v)
            .sum();
        scale * sum
    }

    pub fn component(&self, label: &str) -> Option<f64> {
        self.components.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }
}

/// Picks the smallest of several case evaluations, keeping all of them.
pub(crate) fn tightest(mut evaluated: Vec<Bound>) -> Bound {
    debug_assert!(!evaluated.is_empty());
    let candidates: Vec<(CaseId, f64)> = evaluated.iter().map(|b| (b.case_id, b.value)).collect();
    let best = evaluated
        .iter()
        .enumerate()
        .min_by(|(_, x), (_, y)| x.value.total_cmp(&y.value))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut b = evaluated.swap_remove(best);
    b.candidates = candidates;
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recombination_matches_value() {
        let b = Bound::assemble(
            Method::PowerMean,
            CaseId::I,
            0.5,
            &[("left", 0.25), ("right", 0.75)],
            &[("gamma2", 9.0)],
        );
        assert_eq!(b.value, 0.5);
        assert_eq!(b.recombine(), b.value);
        assert_eq!(b.component("coef:gamma2"), Some(9.0));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }
}
