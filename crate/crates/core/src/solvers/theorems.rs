use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::algebra::rat;
use crate::curvature::three_block_form;
use crate::error::Result;
use crate::solvers::general::general_reduce;
use crate::solvers::quartic::quartic_build;
use crate::space::GroupFamily;
use crate::Rational;

/// `F(1)` in closed form: `2k^2-2kl+k-2-l^2+2l` or `4k^2-4kl-k-2l-1-2l^2`.
pub fn quartic_at_one(family: GroupFamily, k: u64, l: u64) -> Rational {
    let (k, l) = (k as i64, l as i64);
    rat(match family {
        GroupFamily::Orthogonal => 2 * k * k - 2 * k * l + k - 2 - l * l + 2 * l,
        GroupFamily::Symplectic => 4 * k * k - 4 * k * l - k - 2 * l - 1 - 2 * l * l,
    })
}

/// The sign-carrying bracket of `P(1)`.
pub fn p_at_one_bracket(family: GroupFamily, s: usize, k: u64, l: u64) -> Rational {
    let (s, k, l) = (s as i64, k as i64, l as i64);
    rat(match family {
        GroupFamily::Orthogonal => s * k * k - s * k * l + k - 2 - l * l + 2 * l,
        GroupFamily::Symplectic => 2 * s * k * k - 2 * s * k * l - k - 2 * l - 1 - 2 * l * l,
    })
}

/// `P(1)` in closed form: the bracket times `s^2 k^4 l (k-1)(s-1)^2 / 2` or `8 s^2 k^4 l (2k+1)(s-1)^2`.
pub fn p_at_one(family: GroupFamily, s: usize, k: u64, l: u64) -> Rational {
    let (si, ki, li) = (s as i64, k as i64, l as i64);
    let common = rat(si * si * ki.pow(4) * li * (si - 1) * (si - 1));
    let factor = match family {
        GroupFamily::Orthogonal => rat(ki - 1) / rat(2),
        GroupFamily::Symplectic => rat(8 * (2 * ki + 1)),
    };
    common * factor * p_at_one_bracket(family, s, k, l)
}

/// Whether `(k, l)` satisfies the existence hypothesis: `3 <= k < l` or `1 <= k <= l`.
pub fn hypothesis_holds(family: GroupFamily, k: u64, l: u64) -> bool {
    match family {
        GroupFamily::Orthogonal => k >= 3 && k < l,
        GroupFamily::Symplectic => k >= 1 && k <= l,
    }
}

#[derive(Clone, Debug, Default)]
pub struct SignReport {
    /// Cells evaluated, counting each `s` separately for `P(1)`.
    pub checked: usize,
    pub in_hypothesis: usize,
    /// Cells outside the hypothesis where the value is negative anyway.
    pub negative_outside: usize,
    /// Negative sign expected but not found.
    pub violations: Vec<String>,
    /// Closed form and coefficient-based evaluation disagree.
    pub mismatches: Vec<String>,
}

impl SignReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.mismatches.is_empty()
    }

    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.in_hypothesis += other.in_hypothesis;
        self.negative_outside += other.negative_outside;
        self.violations.extend(other.violations);
        self.mismatches.extend(other.mismatches);
        self
    }

    fn record(&mut self, label: String, inside: bool, from_coeffs: &Rational, closed: &Rational) {
        self.checked += 1;
        if from_coeffs != closed {
            self.mismatches.push(format!("{label}: coefficients give {from_coeffs}, closed form {closed}"));
        }
        let negative = *from_coeffs < rat(0);
        if inside {
            self.in_hypothesis += 1;
            if !negative {
                self.violations.push(format!("{label} = {from_coeffs} is not negative"));
            }
        } else if negative {
            self.negative_outside += 1;
        }
    }
}

/// Checks `F(1) < 0` and `P(1) < 0` over the grid, evaluating each value both
/// from the full coefficient formulas and from the closed bracket.
pub fn theorem_sign_checks(
    family: GroupFamily,
    s_range: RangeInclusive<usize>,
    k_range: RangeInclusive<u64>,
    l_range: RangeInclusive<u64>,
) -> Result<SignReport> {
    let min_k = match family {
        GroupFamily::Orthogonal => 3,
        GroupFamily::Symplectic => 1,
    };
    let cells: Vec<(u64, u64)> = k_range
        .filter(|&k| k >= min_k)
        .flat_map(|k| l_range.clone().map(move |l| (k, l)))
        .collect();
    let reports = cells
        .par_iter()
        .map(|&(k, l)| -> Result<SignReport> {
            let mut rep = SignReport::default();
            let inside = hypothesis_holds(family, k, l);
            let f1 = quartic_build(family, k, l)?.eval(&rat(1));
            rep.record(format!("F(1) at k={k}, l={l}"), inside, &f1, &quartic_at_one(family, k, l));
            for s in s_range.clone().filter(|&s| s >= 2) {
                let red = general_reduce(&three_block_form(family, s, k, l)?)?;
                let p1 = red.p_quartic.eval(&rat(1));
                rep.record(format!("P(1) at s={s}, k={k}, l={l}"), inside, &p1, &p_at_one(family, s, k, l));
            }
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(reports.into_iter().fold(SignReport::default(), SignReport::merge))
}
