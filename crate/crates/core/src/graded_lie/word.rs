//! Words over an ordered, weighted alphabet and the Lyndon machinery used
//! for the normal form.

/// A word is a sequence of generator indices (declaration order).
pub type Word = Vec<u16>;

/// True when `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u16]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = uv` of a Lyndon word of length at least two,
/// where `v` is the lexicographically smallest proper suffix.
pub fn standard_factorization(w: &[u16]) -> (&[u16], &[u16]) {
    debug_assert!(w.len() >= 2 && is_lyndon(w));
    let mut split = 1;
    for i in 2..w.len() {
        if w[i..] < w[split..] {
            split = i;
        }
    }
    (&w[..split], &w[split..])
}

pub fn weight(w: &[u16], weights: &[u32]) -> u32 {
    w.iter().map(|&g| weights[g as usize]).sum()
}

/// All Lyndon words whose weight is at most `cap`, produced by the
/// Fredricksen–Kessler–Maiorana prenecklace recursion with weight pruning.
/// Output is in lexicographic order.
pub fn lyndon_words(weights: &[u32], cap: u32) -> Vec<Word> {
    let mut out = Vec::new();
    if weights.is_empty() {
        return out;
    }
    let k = weights.len() as u16;
    let min_weight = *weights.iter().min().unwrap_or(&1);
    let max_len = (cap / min_weight.max(1)) as usize;
    // a[0] is a sentinel; the word lives in a[1..t].
    let mut a = vec![0u16; max_len + 2];
    fkm(1, 1, 0, &mut a, k, weights, cap, max_len, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fkm(
    t: usize,
    p: usize,
    w: u32,
    a: &mut [u16],
    k: u16,
    weights: &[u32],
    cap: u32,
    max_len: usize,
    out: &mut Vec<Word>,
) {
    if t > 1 && p == t - 1 {
        out.push(a[1..t].to_vec());
    }
    if t > max_len {
        return;
    }
    let start = if t == 1 { 0 } else { a[t - p] };
    for j in start..k {
        let nw = w + weights[j as usize];
        if nw > cap {
            continue;
        }
        a[t] = j;
        let np = if t == 1 || j != a[t - p] { t } else { p };
        fkm(t + 1, np, nw, a, k, weights, cap, max_len, out);
    }
}
