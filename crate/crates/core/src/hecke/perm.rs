use std::fmt;

/// Permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<u8>,
    length: usize,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { one_line: (1..=n as u8).collect(), length: 0 }
    }

    pub fn from_one_line(one_line: Vec<u8>) -> Option<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        let length = inversions(&one_line);
        Some(Permutation { one_line, length })
    }

    pub fn one_line(&self) -> &[u8] {
        &self.one_line
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    fn position(&self, value: u8) -> usize {
        self.one_line.iter().position(|&v| v == value).expect("value in range")
    }

    /// `s_i * w`: swaps the values `i` and `i + 1`.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        let (a, b) = (self.position(i as u8), self.position(i as u8 + 1));
        let mut one_line = self.one_line.clone();
        one_line.swap(a, b);
        let length = if a < b { self.length + 1 } else { self.length - 1 };
        Permutation { one_line, length }
    }

    /// Whether `l(s_i w) > l(w)`.
    pub fn left_ascent(&self, i: usize) -> bool {
        self.position(i as u8) < self.position(i as u8 + 1)
    }

    /// Reduced word `[i_1, ..., i_k]` with `w = s_{i_1} ... s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length);
        let mut w = self.clone();
        while !w.is_identity() {
            let i = (1..w.len()).find(|&i| !w.left_ascent(i)).expect("non-identity has a left descent");
            word.push(i);
            w = w.left_mul_simple(i);
        }
        word
    }
}

fn inversions(v: &[u8]) -> usize {
    let mut count = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `1..=n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Permutation::from_one_line(prefix.clone()).unwrap());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8 + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.one_line {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_and_words() {
        let perms = all_permutations(4);
        assert_eq!(perms.len(), 24);
        assert!(perms[0].is_identity());
        for w in &perms {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut x = Permutation::identity(4);
            for &i in word.iter().rev() {
                x = x.left_mul_simple(i);
            }
            assert_eq!(&x, w);
        }
        let longest = Permutation::from_one_line(vec![4, 3, 2, 1]).unwrap();
        assert_eq!(longest.length(), 6);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_line(vec![1, 1]).is_none());
        assert!(Permutation::from_one_line(vec![0, 1]).is_none());
    }
}
