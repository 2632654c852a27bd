//! Integer partitions.

/// All partitions of `k` as weakly decreasing part lists, in decreasing
/// lexicographic order (`(k)` first, `(1^k)` last).
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Number of standard Young tableaux of shape `lambda`, by the hook-length formula.
pub fn standard_tableaux(lambda: &[usize]) -> u128 {
    let k: usize = lambda.iter().sum();
    let mut hooks = 1u128;
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as u128;
        }
    }
    crate::rook::factorial(k) / hooks
}

/// Merges two partitions into one with the parts of both.
pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}
