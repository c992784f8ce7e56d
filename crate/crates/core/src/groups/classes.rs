//! Conjugacy classes and class-multiplication coefficients.

use super::table::GroupTable;
use crate::exec::Exec;
use crate::modring::lcm;

/// Conjugacy-class data of a [`GroupTable`].
///
/// Class 0 is always the identity class. The remaining classes are ordered
/// by the canonical encoding of their representative, which is the member
/// with the smallest encoding, so the numbering does not depend on
/// enumeration order or on the execution schedule.
#[derive(Debug, Clone)]
pub struct ClassData {
    class_of: Vec<u32>,
    sizes: Vec<u64>,
    reps: Vec<usize>,
    inverse_class: Vec<usize>,
    orders: Vec<u64>,
    power_maps: Vec<Vec<u32>>,
    exponent: u64,
    /// `a[i][j][k]` flattened as `(i * r + j) * r + k`.
    coefficients: Vec<u32>,
}

impl ClassData {
    pub fn compute(g: &GroupTable) -> Self {
        Self::compute_with(g, Exec::default())
    }

    pub fn compute_with(g: &GroupTable, exec: Exec) -> Self {
        let n = g.order();
        let unassigned = u32::MAX;
        let mut raw_class = vec![unassigned; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let gens = g.generators();
        let gen_inv: Vec<usize> = gens.iter().map(|&s| g.inv(s)).collect();
        for start in 0..n {
            if raw_class[start] != unassigned {
                continue;
            }
            let id = members.len() as u32;
            raw_class[start] = id;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for (&s, &si) in gens.iter().zip(&gen_inv) {
                    let y = g.mul(g.mul(s, x), si);
                    if raw_class[y] == unassigned {
                        raw_class[y] = id;
                        orbit.push(y);
                    }
                }
            }
            members.push(orbit);
        }

        let reps_raw: Vec<usize> = members
            .iter()
            .map(|m| *m.iter().min_by(|&&a, &&b| g.element(a).cmp(g.element(b))).unwrap())
            .collect();
        let id_class = raw_class[g.identity()] as usize;
        let mut order: Vec<usize> = (0..members.len()).collect();
        order.sort_by(|&a, &b| {
            (a != id_class)
                .cmp(&(b != id_class))
                .then_with(|| g.element(reps_raw[a]).cmp(g.element(reps_raw[b])))
        });
        let mut relabel = vec![0u32; members.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new as u32;
        }
        let class_of: Vec<u32> = raw_class.iter().map(|&c| relabel[c as usize]).collect();
        let sizes: Vec<u64> = order.iter().map(|&old| members[old].len() as u64).collect();
        let reps: Vec<usize> = order.iter().map(|&old| reps_raw[old]).collect();
        let r = reps.len();
        let inverse_class = reps.iter().map(|&x| class_of[g.inv(x)] as usize).collect();

        let mut power_maps = Vec::with_capacity(r);
        let mut orders = Vec::with_capacity(r);
        for &x in &reps {
            let mut pm = vec![class_of[g.identity()]];
            let mut y = x;
            while y != g.identity() {
                pm.push(class_of[y]);
                y = g.mul(y, x);
            }
            orders.push(pm.len() as u64);
            power_maps.push(pm);
        }
        let exponent = orders.iter().fold(1, |acc, &o| lcm(acc, o));

        // For each target class k, count pairs (x, y) with x y = rep_k.
        let per_target: Vec<Vec<u32>> = exec.map(r, |k| {
            let z = reps[k];
            let mut counts = vec![0u32; r * r];
            for x in 0..n {
                let y = g.mul(g.inv(x), z);
                counts[class_of[x] as usize * r + class_of[y] as usize] += 1;
            }
            counts
        });
        let mut coefficients = vec![0u32; r * r * r];
        for (k, counts) in per_target.iter().enumerate() {
            for ij in 0..r * r {
                coefficients[ij * r + k] = counts[ij];
            }
        }

        ClassData {
            class_of,
            sizes,
            reps,
            inverse_class,
            orders,
            power_maps,
            exponent,
            coefficients,
        }
    }

    /// Order of the group the classes partition.
    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn size(&self, k: usize) -> u64 {
        self.sizes[k]
    }

    pub fn representative(&self, k: usize) -> usize {
        self.reps[k]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_class[k]
    }

    /// Order of the elements of class `k`.
    pub fn element_order(&self, k: usize) -> u64 {
        self.orders[k]
    }

    /// Class of `rep_k^s`.
    pub fn power_class(&self, k: usize, s: u64) -> usize {
        let pm = &self.power_maps[k];
        pm[(s % pm.len() as u64) as usize] as usize
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Number of `(x, y)` with `x` in class `i`, `y` in class `j` and
    /// `x y` equal to the representative of class `k`.
    #[inline]
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.reps.len();
        self.coefficients[(i * r + j) * r + k]
    }

    pub fn members(&self, k: usize) -> Vec<usize> {
        (0..self.group_order()).filter(|&x| self.class_of[x] as usize == k).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::table::*;

    const B: u64 = DEFAULT_ELEMENT_BUDGET;

    #[test]
    fn class_counts() {
        let g = build_sl(2, 3, 1, B).unwrap();
        let c = ClassData::compute(&g);
        assert_eq!(c.num_classes(), 7);
        assert_eq!(c.sizes().iter().sum::<u64>(), 24);
        assert_eq!(c.size(0), 1);
        assert_eq!(c.exponent(), 12);

        let g = build_sl(2, 5, 1, B).unwrap();
        assert_eq!(ClassData::compute(&g).num_classes(), 9);

        let t = build_abelian(&[], B).unwrap();
        let c = ClassData::compute(&t);
        assert_eq!(c.num_classes(), 1);
        assert_eq!(c.exponent(), 1);
    }

    fn brute_coefficients(g: &GroupTable, c: &ClassData) {
        let r = c.num_classes();
        let mut count = vec![0u32; r * r * r];
        let n = g.order();
        for k in 0..r {
            let z = c.representative(k);
            for x in 0..n {
                for y in 0..n {
                    if g.mul(x, y) == z {
                        count[(c.class_of(x) * r + c.class_of(y)) * r + k] += 1;
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let mut total = 0u64;
                for k in 0..r {
                    assert_eq!(c.coefficient(i, j, k), count[(i * r + j) * r + k]);
                    total += c.coefficient(i, j, k) as u64 * c.size(k);
                }
                // all products of class i by class j, distributed over classes
                assert_eq!(total, c.size(i) * c.size(j));
            }
        }
    }

    #[test]
    fn coefficients_match_triple_count() {
        for g in [
            build_sl(2, 3, 1, B).unwrap(),
            build_sym(4, B).unwrap(),
            build_quaternion().unwrap(),
            build_sp(2, 2, 1, B).unwrap(),
        ] {
            let c = ClassData::compute(&g);
            brute_coefficients(&g, &c);
        }
    }

    #[test]
    fn numbering_is_schedule_independent() {
        let g = build_alt(5, B).unwrap();
        let a = ClassData::compute_with(&g, Exec::Sequential);
        let b = ClassData::compute_with(&g, Exec::default());
        assert_eq!(a.representatives(), b.representatives());
        assert_eq!(a.coefficients, b.coefficients);
    }

    #[test]
    fn inverse_classes_and_power_maps() {
        let g = build_abelian(&[5], B).unwrap();
        let c = ClassData::compute(&g);
        assert_eq!(c.num_classes(), 5);
        for k in 0..5 {
            let x = c.representative(k);
            assert_eq!(c.representative(c.inverse_class(k)), g.inv(x));
            assert_eq!(c.power_class(k, 2), c.class_of(g.mul(x, x)));
        }
    }
}
