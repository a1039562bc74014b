//! Case selection for the three admissible orderings of
//! `alpha*lambda`, `1 - alpha` and `1 - lambda (1 - alpha)`.

use std::fmt;

use crate::params::RuleParams;

/// Two quantities closer than this are treated as tied.
pub const TIE_EPS: f64 = 1e-14;

/// Which closed form of a kernel integral over one half applies.
///
/// For the left half `int_0^{1-alpha} |t - alpha lambda| ... dt`,
/// `Inner` means the kink `alpha lambda` lies inside `[0, 1-alpha]`.
/// The right half is the left half of the mirrored rule `alpha -> 1 - alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    /// `alpha lambda <= 1 - alpha <= 1 - lambda (1 - alpha)`
    I,
    /// `alpha lambda <= 1 - lambda (1 - alpha) <= 1 - alpha`
    II,
    /// `1 - alpha <= alpha lambda <= 1 - lambda (1 - alpha)`
    III,
}

impl CaseId {
    pub const ALL: [CaseId; 3] = [CaseId::I, CaseId::II, CaseId::III];

    /// `(left, right)` branches used by this case.
    pub fn branches(self) -> (Branch, Branch) {
        match self {
            CaseId::I => (Branch::Inner, Branch::Inner),
            CaseId::II => (Branch::Inner, Branch::Outer),
            CaseId::III => (Branch::Outer, Branch::Inner),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// First applicable case in the order I, II, III.
    pub case: CaseId,
    /// Every case whose ordering holds, ties included.
    pub applicable: Vec<CaseId>,
    /// `alpha lambda == 1 - alpha`
    pub left_tie: bool,
    /// `1 - lambda (1 - alpha) == 1 - alpha`
    pub right_tie: bool,
}

impl Classification {
    pub fn is_boundary(&self) -> bool {
        self.left_tie || self.right_tie
    }
}

/// Classifies `params` into the case(s) whose ordering holds.
///
/// The ordering `1 - alpha < alpha lambda` together with
/// `1 - lambda (1 - alpha) < 1 - alpha` would need `lambda > 1`, so the
/// three cases are exhaustive.
pub fn classify_case(params: &RuleParams) -> Classification {
    let (al, lam) = (params.alpha(), params.lambda());
    let node = 1.0 - al;
    let kink_left = al * lam;
    let kink_right = 1.0 - lam * (1.0 - al);

    let left_tie = (kink_left - node).abs() <= TIE_EPS;
    let right_tie = (kink_right - node).abs() <= TIE_EPS;
    let left_inner = left_tie || kink_left < node;
    let left_outer = left_tie || kink_left > node;
    let right_inner = right_tie || node < kink_right;
    let right_outer = right_tie || node > kink_right;

    let applicable: Vec<CaseId> = CaseId::ALL
        .into_iter()
        .filter(|c| {
            let (l, r) = c.branches();
            let l_ok = match l {
                Branch::Inner => left_inner,
                Branch::Outer => left_outer,
            };
            let r_ok = match r {
                Branch::Inner => right_inner,
                Branch::Outer => right_outer,
            };
            l_ok && r_ok
        })
        .collect();
    debug_assert!(!applicable.is_empty(), "no case for {params}");
    Classification { case: applicable[0], applicable, left_tie, right_tie }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(a: f64, l: f64) -> RuleParams {
        RuleParams::new(a, l).unwrap()
    }

    #[test]
    fn simpson_is_case_one() {
        // 1/6 <= 1/2 <= 5/6
        let c = classify_case(&rp(0.5, 1.0 / 3.0));
        assert_eq!(c.case, CaseId::I);
        assert_eq!(c.applicable, vec![CaseId::I]);
        assert!(!c.is_boundary());
    }

    #[test]
    fn trapezoid_sits_on_both_boundaries() {
        let c = classify_case(&rp(0.5, 1.0));
        assert!(c.left_tie);
        assert!(c.right_tie);
        assert_eq!(c.applicable, vec![CaseId::I, CaseId::II, CaseId::III]);
    }

    #[test]
    fn degenerate_corner() {
        let c = classify_case(&rp(0.0, 0.0));
        assert_eq!(c.case, CaseId::I);
        assert!(!c.left_tie);
        // 1 - 0 == 1 - 0*1
        assert!(c.right_tie);
    }

    #[test]
    fn case_two_and_three() {
        // alpha small, lambda large: lambda(1-alpha) > alpha
        let c = classify_case(&rp(0.2, 0.9));
        assert_eq!(c.applicable, vec![CaseId::II]);
        let c = classify_case(&rp(0.8, 0.9));
        assert_eq!(c.applicable, vec![CaseId::III]);
    }

    #[test]
    fn every_grid_point_has_a_case() {
        for i in 0..=40 {
            for j in 0..=40 {
                let c = classify_case(&rp(i as f64 / 40.0, j as f64 / 40.0));
                assert!(!c.applicable.is_empty());
            }
        }
    }
}
