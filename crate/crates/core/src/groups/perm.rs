use std::fmt;

/// A permutation of `{0, .., m-1}` stored by images.
///
/// Composition follows function composition: `a.compose(&b)` applies `b`
/// first, matching the left action of matrices on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.cycles())
    }
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm { images: (0..m as u32).collect() }
    }

    /// Builds from zero-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm { images })
    }

    /// Builds from disjoint cycles on `{0..m-1}`.
    pub fn from_cycles(m: usize, cycles: &[&[u32]]) -> Self {
        let mut images: Vec<u32> = (0..m as u32).collect();
        for cyc in cycles {
            for (idx, &x) in cyc.iter().enumerate() {
                images[x as usize] = cyc[(idx + 1) % cyc.len()];
            }
        }
        Perm::from_images(images).expect("cycles must be disjoint")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn compose(&self, first: &Perm) -> Perm {
        Perm { images: first.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x as u32);
                x = self.images[x] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        parity_of(&self.images)
    }
}

/// True when the image list describes an even permutation.
pub fn parity_of(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    let mut transpositions = 0usize;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions.is_multiple_of(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Perm::from_cycles(3, &[&[0, 1]]);
        let b = Perm::from_cycles(3, &[&[1, 2]]);
        // (a∘b)(1) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).apply(2), 0);
    }

    #[test]
    fn parity() {
        assert!(Perm::from_cycles(5, &[&[0, 1, 2]]).is_even());
        assert!(!Perm::from_cycles(5, &[&[0, 1]]).is_even());
        assert!(Perm::from_cycles(5, &[&[0, 1], &[2, 3]]).is_even());
        let p = Perm::from_cycles(6, &[&[0, 3, 5, 1]]);
        assert!(p.compose(&p.inverse()).images().iter().enumerate().all(|(i, &x)| i as u32 == x));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_none());
        assert!(Perm::from_images(vec![0, 3]).is_none());
    }
}
