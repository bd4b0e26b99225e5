//! Integer matrix reductions on `i128`. Matrices are row-major `Vec<Vec<i128>>`.

pub type Mat = Vec<Vec<i128>>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

pub fn transpose(a: &Mat, cols: usize) -> Mat {
    let mut t = zeros(cols, a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = *v;
        }
    }
    t
}

pub fn mat_vec(a: &Mat, x: &[i128]) -> Vec<i128> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// Smith normal form `u · a · v = d` with `u`, `v` unimodular and `d`
/// diagonal, d₁ | d₂ | … , all diagonal entries non-negative.
#[derive(Debug, Clone)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<i128>,
    pub u: Mat,
    pub v: Mat,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }
}

pub fn smith(a: &Mat, cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let steps = m.min(n);
    for t in 0..steps {
        loop {
            // Pivot: smallest nonzero |entry| in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = d[i][t] / p;
                if q != 0 {
                    for j in 0..n {
                        d[i][j] -= q * d[t][j];
                    }
                    for j in 0..m {
                        u[i][j] -= q * u[t][j];
                    }
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let q = d[t][j] / p;
                if q != 0 {
                    for i in 0..m {
                        d[i][j] -= q * d[i][t];
                    }
                    for i in 0..n {
                        v[i][j] -= q * v[i][t];
                    }
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in 0..n {
                        d[t][j] += d[i][j];
                    }
                    for j in 0..m {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if t < m && t < n && d[t][t] < 0 {
            for j in 0..n {
                d[t][j] = -d[t][j];
            }
            for j in 0..m {
                u[t][j] = -u[t][j];
            }
        }
    }
    let diag = (0..steps).map(|i| d[i][i]).collect();
    Smith { rows: m, cols: n, diag, u, v }
}

/// Invariant factors of the cokernel of `a` (an `m × cols` relation
/// matrix whose rows are relations among `cols` generators): returns
/// (free rank, torsion divisor chain without 1s).
pub fn cokernel_invariants(relations: &Mat, cols: usize) -> (usize, Vec<i128>) {
    let s = smith(relations, cols);
    let r = s.rank();
    let torsion: Vec<i128> = s.diag.iter().copied().filter(|&x| x > 1).collect();
    (cols - r, torsion)
}

/// Integer solution of `a x = b`, if any.
pub fn solve(a: &Mat, cols: usize, b: &[i128]) -> Option<Vec<i128>> {
    let s = smith(a, cols);
    let c = mat_vec(&s.u, b);
    let mut y = vec![0i128; cols];
    for (i, ci) in c.iter().enumerate() {
        let di = s.diag.get(i).copied().unwrap_or(0);
        if di == 0 {
            if *ci != 0 {
                return None;
            }
        } else {
            if ci % di != 0 {
                return None;
            }
            y[i] = ci / di;
        }
    }
    Some(mat_vec(&s.v, &y))
}

/// Basis of the integer kernel {x : a x = 0}, as vectors.
pub fn kernel(a: &Mat, cols: usize) -> Vec<Vec<i128>> {
    let s = smith(a, cols);
    let r = s.rank();
    (r..cols).map(|j| s.v.iter().map(|row| row[j]).collect()).collect()
}
