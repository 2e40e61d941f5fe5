//! Checks of the deletion and addition theorems on concrete instances.

use serde::Serialize;

use super::{classify, Kind};
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};

/// Deletion of a hyperplane from a free essential arrangement: the result
/// must be free, or plus-one generated with the same exponents and level
/// `|A \ {H}| - |A^H|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionReport {
    pub hyperplane: usize,
    pub n: usize,
    pub n_deletion: usize,
    pub n_restriction: usize,
    pub exponents: Vec<i64>,
    pub predicted_level: i64,
    pub deletion: Kind,
    pub holds: bool,
}

/// Addition of a hyperplane to a free arrangement. `applicable` records
/// whether `|A \ {H}| - |A^H| >= e_{l-2}`; `holds` is `None` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditionReport {
    pub hyperplane: usize,
    pub n: usize,
    pub n_deletion: usize,
    pub n_restriction: usize,
    pub deletion_exponents: Vec<i64>,
    pub hypothesis_lhs: i64,
    pub hypothesis_rhs: Option<i64>,
    pub applicable: bool,
    pub predicted_poexp: Vec<i64>,
    pub predicted_level: i64,
    pub computed: Kind,
    pub holds: Option<bool>,
}

fn check_essential(a: &Arrangement) -> Result<()> {
    if a.is_essential() {
        Ok(())
    } else {
        Err(Error::Precondition("the arrangement is not essential".into()))
    }
}

pub fn verify_deletion_theorem(a: &Arrangement, h: usize) -> Result<DeletionReport> {
    check_essential(a)?;
    let del = a.deletion(h)?;
    let res = a.restriction(h)?;
    let Kind::Free { exponents } = classify(a).kind else {
        return Err(Error::Precondition("the arrangement is not free".into()));
    };
    let predicted_level = del.len() as i64 - res.len() as i64;
    let deletion = classify(&del).kind;
    let holds = match &deletion {
        Kind::Free { .. } => true,
        Kind::PlusOneGenerated { poexp, level } => *poexp == exponents && *level == predicted_level,
        Kind::Other => false,
    };
    Ok(DeletionReport {
        hyperplane: h,
        n: a.len(),
        n_deletion: del.len(),
        n_restriction: res.len(),
        exponents,
        predicted_level,
        deletion,
        holds,
    })
}

pub fn verify_addition_theorem(a: &Arrangement, h: usize) -> Result<AdditionReport> {
    check_essential(a)?;
    let del = a.deletion(h)?;
    let res = a.restriction(h)?;
    let Kind::Free { exponents: e } = classify(&del).kind else {
        return Err(Error::Precondition("the deletion is not free".into()));
    };
    let l = e.len();
    let n = a.len() as i64;
    let nres = res.len() as i64;
    let lhs = del.len() as i64 - nres;
    let rhs = (l >= 3).then(|| e[l - 3]);
    let applicable = rhs.is_some_and(|r| lhs >= r);
    let (predicted_poexp, predicted_level) = if l >= 2 {
        let mut p = e.clone();
        p[l - 2] += 1;
        p[l - 1] += 1;
        p.sort_unstable();
        (p, e[l - 2] + e[l - 1] - n + nres + 1)
    } else {
        (Vec::new(), 0)
    };
    let computed = classify(a).kind;
    let holds = applicable.then(|| match &computed {
        Kind::Free { .. } => true,
        Kind::PlusOneGenerated { poexp, level } => *poexp == predicted_poexp && *level == predicted_level,
        Kind::Other => false,
    });
    Ok(AdditionReport {
        hyperplane: h,
        n: a.len(),
        n_deletion: del.len(),
        n_restriction: res.len(),
        deletion_exponents: e,
        hypothesis_lhs: lhs,
        hypothesis_rhs: rhs,
        applicable,
        predicted_poexp,
        predicted_level,
        computed,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::io::from_text;

    #[test]
    fn boolean_deletion() {
        let a = from_text("x, y, z, t").unwrap();
        for h in 0..4 {
            let r = verify_deletion_theorem(&a, h).unwrap();
            assert!(r.holds);
            assert_eq!(r.deletion, Kind::Free { exponents: vec![0, 1, 1, 1] });
        }
    }

    #[test]
    fn deletion_preconditions() {
        let not_free = from_text("x, x - y, x - t, y - z, z - t").unwrap();
        assert!(matches!(verify_deletion_theorem(&not_free, 0), Err(Error::Precondition(_))));
        let not_essential = from_text("variables: x, y, z\nx, y").unwrap();
        assert!(matches!(verify_deletion_theorem(&not_essential, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn addition_cases() {
        // four generic planes: the hypothesis fails
        let a = from_text("x, y, z, x + y + z").unwrap();
        let r = verify_addition_theorem(&a, 3).unwrap();
        assert_eq!(r.deletion_exponents, vec![1, 1, 1]);
        assert_eq!((r.hypothesis_lhs, r.hypothesis_rhs), (0, Some(1)));
        assert!(!r.applicable);
        assert_eq!(r.holds, None);
        assert_eq!(r.computed, Kind::PlusOneGenerated { poexp: vec![1, 2, 2], level: 2 });

        let b = from_text("x, y, z, x + y").unwrap();
        let r = verify_addition_theorem(&b, 3).unwrap();
        assert!(r.applicable);
        assert_eq!(r.computed, Kind::Free { exponents: vec![1, 1, 2] });
        assert_eq!(r.holds, Some(true));
    }

    #[test]
    fn addition_guard() {
        let a = from_text("variables: x, y, z, t, w\nx, y, z, t, w, x + y + z, x - w, y + 2*t").unwrap();
        // A minus {y + 2t} is plus-one generated, not free
        assert!(matches!(verify_addition_theorem(&a, 7), Err(Error::Precondition(_))));
    }
}
