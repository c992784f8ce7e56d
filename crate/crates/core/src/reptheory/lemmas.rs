//! Checks of the structural facts behind the degree lower bounds for
//! `SL_k(Z/p^n)` and `Sp_2k(Z/p^n)`, phrased on computed data.

use serde::Serialize;

use super::dixon::{is_primitive_prime_power_index, CharacterTable};
use crate::error::{Error, Result};
use crate::groups::matrix::{sl_root_element, sp_alpha, sp_diagonal, sp_g};
use crate::groups::{ClassData, ElementKind, Family, GroupTable, Matrix};

/// Class of the element with the given matrix.
pub fn class_of_matrix(g: &GroupTable, classes: &ClassData, m: &Matrix) -> Result<usize> {
    let x = g
        .matrix_index(m)
        .ok_or_else(|| Error::InvalidParameters("matrix is not in the group".into()))?;
    Ok(classes.class_of(x))
}

/// Class of `e_1 = I + E_{1,k}` in a built `SL_k(Z/p^n)`.
pub fn sl_e1_class(g: &GroupTable, classes: &ClassData) -> Result<usize> {
    match (g.descriptor().family, g.kind()) {
        (Family::Sl, ElementKind::Matrix { dim, modulus }) => {
            class_of_matrix(g, classes, &sl_root_element(*dim, *modulus, 0))
        }
        (f, _) => Err(Error::UnsupportedFamily(f.name().into())),
    }
}

/// Every non-trivial irreducible character differs from its degree on the
/// class of `e_1`, i.e. no non-trivial representation kills `e_1`.
pub fn e1_outside_nontrivial_kernels(table: &CharacterTable, e1_class: usize) -> bool {
    (0..table.r())
        .filter(|&c| !table.is_trivial(c))
        .all(|c| !table.kernel(c).contains(&e1_class))
}

/// Some character of the set takes a value at `e_1` with a non-zero
/// multiplicity on a primitive `p^n`-th root of unity.
pub fn set_sees_primitive_root(
    table: &CharacterTable,
    characters: &[usize],
    e1_class: usize,
    p: u64,
    n: u32,
) -> bool {
    let e = table.exponent();
    characters.iter().any(|&c| {
        table
            .value_terms(c, e1_class)
            .iter()
            .any(|&(t, m)| m > 0 && is_primitive_prime_power_index(t as u64, e, p, n))
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

/// Conjugation of the unipotent generators `G_ij` of `Sp_2k` by
/// `D_alpha`, `alpha` having first row `(t, a_1, ..., a_{k-1})`:
///
/// * `D G_11 D^-1 = G_11^(t^2)`
/// * `D G_1j D^-1 = G_11^(2 t a_(j-1)) G_1j^t` for `2 <= j <= k`
/// * `D G_22 D^-1 = G_11^(a_1^2) G_12^(a_1) G_22`
/// * `D G_2j D^-1 = G_11^(2 a_1 a_(j-1)) G_1j^(a_1) G_12^(a_(j-1)) G_2j` for `3 <= j <= k`
pub fn sp_conjugation_identities(
    k: usize,
    modulus: crate::modring::Modulus,
    t: u32,
    a: &[u32],
) -> Result<Vec<IdentityCheck>> {
    if k < 2 {
        return Err(Error::InvalidParameters("need k >= 2".into()));
    }
    let d = sp_diagonal(&sp_alpha(k, modulus, t, a)?)?;
    let dinv = d.inverse()?;
    let conj = |m: &Matrix| d.mul(m).mul(&dinv);
    let g = |i: usize, j: usize| sp_g(k, modulus, i, j);
    let e = |x: u32| x as u64;
    let mul = |x: u32, y: u32| modulus.mul(x, y) as u64;
    let mut out = Vec::new();
    out.push(IdentityCheck { name: "G11".into(), holds: conj(&g(1, 1)) == g(1, 1).pow(mul(t, t)) });
    for j in 2..=k {
        let rhs = g(1, 1).pow(mul(modulus.mul(2 % modulus.value() as u32, t), a[j - 2])).mul(&g(1, j).pow(e(t)));
        out.push(IdentityCheck { name: format!("G1{j}"), holds: conj(&g(1, j)) == rhs });
    }
    let a1 = a[0];
    let rhs = g(1, 1).pow(mul(a1, a1)).mul(&g(1, 2).pow(e(a1))).mul(&g(2, 2));
    out.push(IdentityCheck { name: "G22".into(), holds: conj(&g(2, 2)) == rhs });
    for j in 3..=k {
        let aj = a[j - 2];
        let rhs = g(1, 1)
            .pow(mul(modulus.mul(2 % modulus.value() as u32, a1), aj))
            .mul(&g(1, j).pow(e(a1)))
            .mul(&g(1, 2).pow(e(aj)))
            .mul(&g(2, j));
        out.push(IdentityCheck { name: format!("G2{j}"), holds: conj(&g(2, j)) == rhs });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::*;
    use crate::modring::Modulus;
    use crate::reptheory::{character_table, min_faithful_degree};

    #[test]
    fn e1_is_detected_in_sl2() {
        let g = build_sl(2, 5, 1, DEFAULT_ELEMENT_BUDGET).unwrap();
        let c = ClassData::compute(&g);
        let t = character_table(&g, &c).unwrap();
        let e1 = sl_e1_class(&g, &c).unwrap();
        assert!(e1_outside_nontrivial_kernels(&t, e1));
        let f = min_faithful_degree(&t).unwrap();
        assert!(set_sees_primitive_root(&t, &f.characters, e1, 5, 1));
    }

    #[test]
    fn sp_identities_small() {
        let m = Modulus::new(3, 1).unwrap();
        let checks = sp_conjugation_identities(3, m, 2, &[1, 2]).unwrap();
        assert_eq!(checks.len(), 1 + 2 + 1 + 1);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
    }

    #[test]
    fn wrong_family() {
        let g = build_alt(4, DEFAULT_ELEMENT_BUDGET).unwrap();
        let c = ClassData::compute(&g);
        assert!(sl_e1_class(&g, &c).is_err());
    }
}
