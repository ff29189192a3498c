//! Counting and enumeration helpers: multiset permutation counts, sorted
//! multi-index enumeration, and integer compositions for the simplex grid.

/// n! for n up to 20 (fits in u64).
pub fn factorial(n: usize) -> u64 {
    const TABLE: [u64; 21] = [
        1,
        1,
        2,
        6,
        24,
        120,
        720,
        5040,
        40320,
        362880,
        3628800,
        39916800,
        479001600,
        6227020800,
        87178291200,
        1307674368000,
        20922789888000,
        355687428096000,
        6402373705728000,
        121645100408832000,
        2432902008176640000,
    ];
    TABLE[n]
}

/// Binomial coefficient C(n, k) computed exactly in u128.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 1..=k {
        // Exact at every step: result * (n - k + i) is divisible by i.
        result = result * (n - k + i) / i;
    }
    result
}

/// Number of distinct permutations of a sorted multi-index: k! / prod(m_j!)
/// over the multiplicities m_j of its distinct values.
pub fn distinct_permutations(sorted: &[usize]) -> u64 {
    let mut count = factorial(sorted.len());
    let mut run = 1usize;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            count /= factorial(run);
            run = 1;
        }
    }
    count / factorial(run)
}

/// Visit every sorted (non-decreasing) multi-index of length `k` over
/// `0..n`, i.e. every canonical index of an order-k dimension-n symmetric
/// tensor, in lexicographic order.
pub fn for_each_sorted_multi_index<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if n == 0 {
        return;
    }
    let mut idx = vec![0usize; k];
    loop {
        f(&idx);
        // Rightmost position that can still increase.
        let mut pos = k;
        while pos > 0 {
            if idx[pos - 1] + 1 < n {
                break;
            }
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        let v = idx[pos - 1] + 1;
        for slot in idx.iter_mut().skip(pos - 1) {
            *slot = v;
        }
    }
}

/// Number of compositions of `total` into `parts` nonnegative integers.
pub fn composition_count(total: u32, parts: usize) -> u128 {
    binomial(total as u128 + parts as u128 - 1, parts as u128 - 1)
}

/// First composition in the enumeration order: (total, 0, ..., 0).
pub fn first_composition(total: u32, parts: usize) -> Vec<u32> {
    let mut c = vec![0u32; parts];
    c[0] = total;
    c
}

/// Advance `c` to its successor in descending lexicographic order; returns
/// false once the last composition (0, ..., 0, total) has been passed.
pub fn next_composition(c: &mut [u32]) -> bool {
    let parts = c.len();
    // Rightmost position before the last that still holds mass to move.
    let mut i = parts - 1;
    while i > 0 && c[i - 1] == 0 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let i = i - 1;
    c[i] -= 1;
    let moved: u32 = 1 + c[i + 1..].iter().sum::<u32>();
    for slot in c.iter_mut().skip(i + 2) {
        *slot = 0;
    }
    c[i + 1] = moved;
    true
}

/// Composition at position `rank` in the same descending lexicographic
/// order produced by [`next_composition`].
pub fn composition_at(total: u32, parts: usize, mut rank: u128) -> Vec<u32> {
    let mut c = vec![0u32; parts];
    let mut remaining = total;
    for i in 0..parts {
        if i == parts - 1 {
            c[i] = remaining;
            break;
        }
        let mut v = remaining;
        loop {
            let below = composition_count(remaining - v, parts - i - 1);
            if rank < below {
                break;
            }
            rank -= below;
            v -= 1;
        }
        c[i] = v;
        remaining -= v;
    }
    c
}
