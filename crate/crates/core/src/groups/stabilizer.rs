//! Point stabilizers used by the coset constructions.

use super::table::{ElementKind, Family, GroupTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilizerAction {
    /// Stabilizer of a line modulo `p`: the last basis vector for `SL_k`,
    /// the first for `Sp_2k`.
    Projective,
    /// Stabilizer of the same basis vector itself.
    Natural,
    /// Stabilizer of a point of `{0..m-1}` for `Alt`/`Sym`, or of a
    /// neighbour of the root for tree quotients.
    RootNeighbor(usize),
}

/// Subgroup ordinals (ascending) and the index of the subgroup.
pub fn stabilizer_subgroup(g: &GroupTable, action: StabilizerAction) -> Result<(Vec<usize>, u64)> {
    let desc = g.descriptor();
    let members: Vec<usize> = match (action, g.kind()) {
        (StabilizerAction::Projective | StabilizerAction::Natural, ElementKind::Matrix { dim, modulus })
            if matches!(desc.family, Family::Sl | Family::Sp) =>
        {
            let dim = *dim;
            let col = if desc.family == Family::Sl { dim - 1 } else { 0 };
            let p = modulus.p() as u32;
            (0..g.order())
                .filter(|&x| {
                    let e = g.element(x);
                    let column = (0..dim).map(|r| e[r * dim + col]);
                    match action {
                        StabilizerAction::Projective => column
                            .enumerate()
                            .all(|(r, v)| if r == col { v % p != 0 } else { v % p == 0 }),
                        _ => column.enumerate().all(|(r, v)| v == u32::from(r == col)),
                    }
                })
                .collect()
        }
        (StabilizerAction::RootNeighbor(point), ElementKind::Perm { degree }) => match desc.family {
            Family::Alt | Family::Sym => {
                check_point(point, *degree)?;
                (0..g.order()).filter(|&x| g.element(x)[point] as usize == point).collect()
            }
            Family::Tree if desc.level == Some(1) => {
                check_point(point, *degree)?;
                (0..g.order()).filter(|&x| g.element(x)[point] as usize == point).collect()
            }
            Family::Tree => {
                let k = desc.k.unwrap_or(0) as usize;
                check_point(point, k + 1)?;
                (0..g.order())
                    .filter(|&x| g.element(x)[point * k] as usize / k == point)
                    .collect()
            }
            f => return Err(Error::UnsupportedFamily(f.name().into())),
        },
        _ => return Err(Error::UnsupportedFamily(desc.family.name().into())),
    };
    let index = g.order() as u64 / members.len() as u64;
    Ok((members, index))
}

fn check_point(point: usize, degree: usize) -> Result<()> {
    if point >= degree {
        Err(Error::InvalidParameters(format!("point {point} outside 0..{degree}")))
    } else {
        Ok(())
    }
}

/// True when `members` is closed under multiplication and inversion.
pub fn is_subgroup(g: &GroupTable, members: &[usize]) -> bool {
    let mut flag = vec![false; g.order()];
    for &x in members {
        flag[x] = true;
    }
    flag[g.identity()]
        && members.iter().all(|&x| {
            flag[g.inv(x)] && members.iter().all(|&y| flag[g.mul(x, y)])
        })
}
