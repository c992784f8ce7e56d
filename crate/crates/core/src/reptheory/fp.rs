//! Arithmetic, polynomials and linear algebra over a prime field `F_l`
//! with `l < 2^31`.

use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    l: u64,
}

impl Fp {
    pub fn new(l: u64) -> Self {
        debug_assert!(l < 1 << 31);
        Fp { l }
    }

    pub fn modulus(&self) -> u64 {
        self.l
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.l {
            s - self.l
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.l - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.l - a
        }
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.l;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.l), "inverse of zero in F_{}", self.l);
        self.pow(a, self.l - 2)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let order = self.l - 1;
        let factors = prime_factors(order);
        (2..self.l)
            .find(|&g| factors.iter().all(|&q| self.pow(g, order / q) != 1))
            .unwrap_or(1)
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomials as coefficient vectors, lowest degree first, no trailing
/// zeros (the zero polynomial is empty).
pub type Poly = Vec<u64>;

fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_rem(f: &Fp, a: &Poly, m: &Poly) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = f.inv(*m.last().unwrap());
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = f.mul(*r.last().unwrap(), lead_inv);
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(f: &Fp, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, &prod, m)
}

fn poly_powmod(f: &Fp, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc: Poly = poly_rem(f, &vec![1], m);
    let mut b = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(f, &acc, &b, m);
        }
        b = poly_mulmod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn poly_gcd(f: &Fp, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = f.inv(lead);
        for c in x.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    x
}

fn poly_sub(f: &Fp, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.sub(x, y);
    }
    trim(&mut out);
    out
}

/// Distinct roots of `p` in `F_l` (Cantor–Zassenhaus on the split part).
pub fn roots<R: Rng>(f: &Fp, p: &Poly, rng: &mut R) -> Vec<u64> {
    let mut p = p.clone();
    trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    // product of the distinct linear factors: gcd(x^l - x, p)
    let xl = poly_powmod(f, &vec![0, 1], f.modulus(), &p);
    let split = poly_gcd(f, &p, &poly_sub(f, &xl, &vec![0, 1]));
    let mut out = Vec::new();
    split_linear(f, split, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear<R: Rng>(f: &Fp, p: Poly, rng: &mut R, out: &mut Vec<u64>) {
    match p.len() {
        0 | 1 => {}
        2 => out.push(f.neg(f.mul(p[0], f.inv(p[1])))),
        _ => loop {
            let a = rng.random_range(0..f.modulus());
            let h = poly_powmod(f, &vec![a, 1], (f.modulus() - 1) / 2, &p);
            let g = poly_gcd(f, &p, &poly_sub(f, &h, &vec![1]));
            if g.len() > 1 && g.len() < p.len() {
                let q = poly_div_exact(f, &p, &g);
                split_linear(f, g, rng, out);
                split_linear(f, q, rng, out);
                break;
            }
        },
    }
}

fn poly_div_exact(f: &Fp, a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![0u64; a.len() - db];
    let lead_inv = f.inv(*b.last().unwrap());
    for shift in (0..q.len()).rev() {
        let c = f.mul(r[shift + db], lead_inv);
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
    }
    trim(&mut q);
    q
}

/// Characteristic polynomial of a square matrix (row-major) via reduction
/// to upper Hessenberg form.
pub fn charpoly(f: &Fp, a: &[u64], n: usize) -> Poly {
    let mut h = a.to_vec();
    let at = |r: usize, c: usize| r * n + c;
    for col in 0..n.saturating_sub(2) {
        let pivot = (col + 1..n).find(|&r| h[at(r, col)] != 0);
        let Some(piv) = pivot else { continue };
        if piv != col + 1 {
            for c in 0..n {
                h.swap(at(piv, c), at(col + 1, c));
            }
            for r in 0..n {
                h.swap(at(r, piv), at(r, col + 1));
            }
        }
        let inv = f.inv(h[at(col + 1, col)]);
        for r in col + 2..n {
            let factor = f.mul(h[at(r, col)], inv);
            if factor == 0 {
                continue;
            }
            for c in 0..n {
                h[at(r, c)] = f.sub(h[at(r, c)], f.mul(factor, h[at(col + 1, c)]));
            }
            for rr in 0..n {
                h[at(rr, col + 1)] = f.add(h[at(rr, col + 1)], f.mul(factor, h[at(rr, r)]));
            }
        }
    }
    // p_0 = 1; p_{m} = (x - h_mm) p_{m-1} - sum_i h_{i,m} prod(sub-diagonals) p_{i-1}
    let mut polys: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h[at(m, m)], c));
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[at(i + 1, i)]);
            let coef = f.mul(prod, h[at(i, m)]);
            if coef != 0 {
                for (j, &c) in polys[i].iter().enumerate() {
                    next[j] = f.sub(next[j], f.mul(coef, c));
                }
            }
        }
        polys.push(next);
    }
    let mut p = polys.pop().unwrap();
    trim(&mut p);
    p
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: &Fp, rows: &mut [Vec<u64>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the null space of the `n x n` matrix `a` (row-major).
pub fn null_space(f: &Fp, a: &[u64], n: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = (0..n).map(|r| a[r * n..(r + 1) * n].to_vec()).collect();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[ri][fc]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primitive_roots() {
        assert_eq!(Fp::new(7).primitive_root(), 3);
        assert_eq!(Fp::new(13).primitive_root(), 2);
        let f = Fp::new(1009);
        let g = f.primitive_root();
        let mut seen = std::collections::HashSet::new();
        let mut x = 1;
        for _ in 0..1008 {
            x = f.mul(x, g);
            seen.insert(x);
        }
        assert_eq!(seen.len(), 1008);
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let f = Fp::new(101);
        // [[2,1,0],[0,3,4],[5,0,1]]
        let a = [2, 1, 0, 0, 3, 4, 5, 0, 1];
        let p = charpoly(&f, &a, 3);
        // evaluate det(x I - A) at a few points by brute force
        for x in 0..10u64 {
            let m: Vec<i64> = (0..9)
                .map(|i| {
                    let d = if i % 4 == 0 { x as i64 } else { 0 };
                    d - a[i] as i64
                })
                .collect();
            let det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6]);
            let eval = p.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
            assert_eq!(eval, det.rem_euclid(101) as u64);
        }
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = Fp::new(97);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x-3)(x-5)^2(x-0)(x^2+1) ; x^2+1 has roots in F_97 since 97 = 1 mod 4
        let mut p: Poly = vec![1];
        for r in [3u64, 5, 5, 0] {
            let lin = [f.neg(r), 1];
            let mut out = vec![0; p.len() + 1];
            for (i, &c) in p.iter().enumerate() {
                for (j, &d) in lin.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(c, d));
                }
            }
            p = out;
        }
        let rs = roots(&f, &p, &mut rng);
        assert_eq!(rs, vec![0, 3, 5]);
        let sq = roots(&f, &vec![1, 0, 1], &mut rng);
        assert_eq!(sq.len(), 2);
        assert!(sq.iter().all(|&r| f.add(f.mul(r, r), 1) == 0));
    }

    #[test]
    fn null_space_dimension() {
        let f = Fp::new(13);
        let a = [1, 2, 3, 2, 4, 6, 0, 0, 0];
        let ns = null_space(&f, &a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in 0..3 {
                let s = (0..3).fold(0, |acc, c| f.add(acc, f.mul(a[r * 3 + c], v[c])));
                assert_eq!(s, 0);
            }
        }
    }
}
