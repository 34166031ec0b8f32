//! Small counting and enumeration helpers shared by the solvers.

/// Binomial coefficient as `u128`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is always integral at this point
        let num = (n - i) as u128;
        acc = match acc.checked_mul(num) {
            Some(v) => v / (i as u128 + 1),
            None => {
                let g = gcd(acc, i as u128 + 1);
                let a = acc / g;
                let d = (i as u128 + 1) / g;
                match a.checked_mul(num / d) {
                    Some(v) if num.is_multiple_of(d) => v,
                    _ => return u128::MAX,
                }
            }
        };
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Calls `f` on every k-subset of `0..n` in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c);
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// The `index`-th k-subset of `0..n` in lexicographic order.
pub fn unrank_combination(n: usize, k: usize, mut index: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let block = binomial((n - next - 1) as u64, remaining as u64);
            if index < block {
                break;
            }
            index -= block;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

#[cfg(test)]
/// Lexicographic rank of an ascending k-subset of `0..n`; inverse of
/// [`unrank_combination`]. `None` if C(n, k) overflows.
pub fn rank_combination(n: usize, c: &[usize]) -> Option<u128> {
    let k = c.len();
    let total = binomial(n as u64, k as u64);
    if total == u128::MAX {
        return None;
    }
    let tail: u128 = c
        .iter()
        .enumerate()
        .map(|(i, &x)| binomial((n - 1 - x) as u64, (k - i) as u64))
        .sum();
    Some(total - 1 - tail)
}

/// Pascal table of C(a, b) for a <= n, b <= k, saturating.
pub struct BinomialTable {
    k: usize,
    table: Vec<u128>,
}

impl BinomialTable {
    pub fn new(n: usize, k: usize) -> Self {
        let w = k + 1;
        let mut table = vec![0u128; (n + 1) * w];
        for a in 0..=n {
            table[a * w] = 1;
            for b in 1..=k.min(a) {
                table[a * w + b] =
                    table[(a - 1) * w + b - 1].saturating_add(table[(a - 1) * w + b]);
            }
        }
        BinomialTable { k, table }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u128 {
        self.table[a * (self.k + 1) + b]
    }

    /// Same as [`rank_combination`] with `c.len() == k`.
    pub fn rank(&self, n: usize, c: &[usize]) -> Option<u128> {
        let k = c.len();
        let total = self.get(n, k);
        if total == u128::MAX {
            return None;
        }
        let tail: u128 = c
            .iter()
            .enumerate()
            .map(|(i, &x)| self.get(n - 1 - x, k - i))
            .sum();
        Some(total - 1 - tail)
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

pub fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Lexicographic rank of a permutation of `0..k`.
pub fn permutation_rank(perm: &[usize]) -> usize {
    let k = perm.len();
    let mut rank = 0;
    for i in 0..k {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank += smaller * factorial(k - 1 - i) as usize;
    }
    rank
}

/// Next mask with the same popcount (Gosper's hack).
#[inline]
pub fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}

/// Iterates over all `n`-bit masks with exactly `k` bits set, ascending.
pub fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 63);
    let limit = 1u64 << n;
    let mut cur = if k > n {
        limit
    } else if k == 0 {
        0
    } else {
        (1u64 << k) - 1
    };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if k == 0 {
            done = true;
        } else {
            cur = next_same_popcount(cur);
            if cur >= limit {
                done = true;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(3, 3), 1);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(30, 15), 155_117_520);
        assert!(binomial(1000, 30) > 1u128 << 100);
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut all = Vec::new();
        for_each_combination(5, 3, |c| all.push(c.to_vec()));
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(&unrank_combination(5, 3, i as u128), c);
            assert_eq!(rank_combination(5, c), Some(i as u128));
            assert_eq!(BinomialTable::new(5, 3).rank(5, c), Some(i as u128));
        }
        let mut empty = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            empty += 1
        });
        assert_eq!(empty, 1);
        for_each_combination(2, 3, |_| panic!("no 3-subsets of 2 elements"));
    }

    #[test]
    fn permutation_ranks_match_order() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        for (i, p) in perms.iter().enumerate() {
            assert_eq!(permutation_rank(p), i);
        }
    }

    #[test]
    fn gosper_counts() {
        assert_eq!(masks_of_size(5, 2).count(), 10);
        assert_eq!(masks_of_size(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_of_size(5, 5).collect::<Vec<_>>(), vec![31]);
        assert_eq!(masks_of_size(3, 4).count(), 0);
        assert!(masks_of_size(6, 3).all(|m| m.count_ones() == 3 && m < 64));
    }
}
