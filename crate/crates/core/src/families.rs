//! Built-in matrices: classical finite types, untwisted affine types and the
//! named examples used throughout the test suite.

use crate::error::{Error, Result};
use crate::gcm::Gcm;
use crate::linalg::rat;
use crate::rootsys;

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn from_edges(labels: Vec<String>, edges: &[(usize, usize, i64, i64)]) -> Gcm {
    let n = labels.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j, aij, aji) in edges {
        m[i][j] = aij;
        m[j][i] = aji;
    }
    Gcm::new(labels, m).expect("built-in matrix satisfies the Cartan axioms")
}

fn chain(n: usize) -> Vec<(usize, usize, i64, i64)> {
    (1..n).map(|i| (i - 1, i, -1, -1)).collect()
}

/// Finite-type Cartan matrix with Bourbaki numbering, or `None` when the
/// letter/rank combination does not exist (`B1`, `D3`, `E9`, ...).
pub fn try_classical(letter: char, n: usize) -> Option<Gcm> {
    let mut e = chain(n);
    match (letter, n) {
        ('A', 1..) => {}
        ('B', 2..) => {
            // alpha_n short
            e[n - 2] = (n - 2, n - 1, -1, -2);
        }
        ('C', 2..) => {
            // alpha_n long
            e[n - 2] = (n - 2, n - 1, -2, -1);
        }
        ('D', 4..) => {
            e[n - 2] = (n - 3, n - 1, -1, -1);
        }
        ('E', 6..=8) => {
            e = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
            e.extend((2..n - 1).map(|i| (i, i + 1, -1, -1)));
        }
        ('F', 4) => {
            e[1] = (1, 2, -1, -2);
        }
        ('G', 2) => {
            e[0] = (0, 1, -3, -1);
        }
        _ => return None,
    }
    Some(from_edges(labels(n), &e))
}

/// Like [`try_classical`] but panics on a nonexistent type.
pub fn classical(letter: char, n: usize) -> Gcm {
    try_classical(letter, n).unwrap_or_else(|| panic!("no finite type {letter}{n}"))
}

/// Untwisted affine matrix `X_n^(1)`: the extending vertex is labelled "0"
/// and placed first.
pub fn try_affine(letter: char, n: usize) -> Option<Gcm> {
    if letter == 'A' && n == 1 {
        return Some(from_edges(vec!["0".into(), "1".into()], &[(0, 1, -2, -2)]));
    }
    let fin = try_classical(letter, n)?;
    let theta = rootsys::highest_root(&fin, &fin.all()).ok()?;
    let d = fin.symmetrizer().ok()?;
    let dmax = d.iter().max().cloned()?;
    let mut m = vec![vec![0i64; n + 1]; n + 1];
    m[0][0] = 2;
    for j in 0..n {
        // a_{0,j} = -<alpha_j, theta^vee>, a_{j,0} = -<theta, alpha_j^vee>
        let mut to = rat(0);
        let mut from = 0i64;
        for i in 0..n {
            let c = theta.coords()[i];
            to += rat(c) * &d[i] * rat(fin.a(i, j)) / &dmax;
            from += c * fin.a(j, i);
        }
        assert!(to.is_integer());
        m[0][j + 1] = -to.to_integer().try_into().ok()?;
        m[j + 1][0] = -from;
        for k in 0..n {
            m[j + 1][k + 1] = fin.a(j, k);
        }
    }
    let mut lab = vec!["0".to_string()];
    lab.extend(labels(n));
    Gcm::new(lab, m).ok()
}

pub fn affine(letter: char, n: usize) -> Gcm {
    try_affine(letter, n).unwrap_or_else(|| panic!("no affine type {letter}{n}(1)"))
}

/// The rank-10 hyperbolic matrix with vertices "-1", "0", "1", ..., "8":
/// E8 on 1..8 (Bourbaki numbering) extended by 8–0–(-1).
pub fn e10() -> Gcm {
    let lab: Vec<String> = ["-1", "0", "1", "2", "3", "4", "5", "6", "7", "8"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let idx = |s: &str| lab.iter().position(|l| l == s).expect("label");
    let pairs = [
        ("1", "3"),
        ("3", "4"),
        ("4", "2"),
        ("4", "5"),
        ("5", "6"),
        ("6", "7"),
        ("7", "8"),
        ("8", "0"),
        ("0", "-1"),
    ];
    let edges: Vec<_> = pairs
        .iter()
        .map(|(a, b)| (idx(a), idx(b), -1, -1))
        .collect();
    from_edges(lab.clone(), &edges)
}

/// Symmetric rank-6 indefinite matrix with determinant 275 and an
/// admissible fold {1,5},{2,6},{3},{4}.
pub fn paper_s5() -> Gcm {
    Gcm::unlabeled(vec![
        vec![2, -3, -1, 0, 0, 0],
        vec![-3, 2, -1, 0, 0, 0],
        vec![-1, -1, 2, -1, -1, -1],
        vec![0, 0, -1, 2, 0, 0],
        vec![0, 0, -1, 0, 2, -3],
        vec![0, 0, -1, 0, -3, 2],
    ])
    .expect("valid")
}

/// Rank-2 matrix `[[2,-a],[-b,2]]`.
pub fn rank2(a: i64, b: i64) -> Result<Gcm> {
    Gcm::unlabeled(vec![vec![2, -a], vec![-b, 2]])
}

/// Resolve a built-in name: `E10`, `paper-s5`, `Ha,b` (rank 2), `Xn` for a
/// finite type and `Xn(1)` for an untwisted affine type. An optional
/// underscore after the letter is accepted (`A_5`).
pub fn builtin(name: &str) -> Result<Gcm> {
    let unknown = || Error::UnknownName(name.to_string());
    match name {
        "E10" => return Ok(e10()),
        "paper-s5" => return Ok(paper_s5()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix('H') {
        let (a, b) = rest.split_once(',').ok_or_else(unknown)?;
        let a: i64 = a.trim().parse().map_err(|_| unknown())?;
        let b: i64 = b.trim().parse().map_err(|_| unknown())?;
        if a <= 0 || b <= 0 {
            return Err(unknown());
        }
        return rank2(a, b);
    }
    let mut chars = name.chars();
    let letter = chars.next().ok_or_else(unknown)?;
    let rest = chars.as_str();
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    let (num, affine_suffix) = match rest.strip_suffix("(1)") {
        Some(r) => (r, true),
        None => (rest, false),
    };
    let num = num.trim_matches(|c| c == '{' || c == '}');
    let n: usize = num.parse().map_err(|_| unknown())?;
    if n > 64 {
        return Err(unknown());
    }
    let g = if affine_suffix {
        try_affine(letter, n)
    } else {
        try_classical(letter, n)
    };
    g.ok_or_else(unknown)
}

/// Every connected finite-type diagram up to isomorphism with rank in
/// `1..=max_rank`, as `(name, matrix)`; `C2` is omitted as it equals `B2`.
pub fn connected_finite(max_rank: usize) -> Vec<(String, Gcm)> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        for letter in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
            if letter == 'C' && n == 2 {
                continue;
            }
            if let Some(g) = try_classical(letter, n) {
                out.push((format!("{letter}{n}"), g));
            }
        }
    }
    out
}

/// Untwisted affine diagrams of types A–D with total rank at most `max_rank`.
pub fn affine_abcd(max_rank: usize) -> Vec<(String, Gcm)> {
    let mut out = Vec::new();
    for n in 1..max_rank {
        for letter in ['A', 'B', 'C', 'D'] {
            if letter == 'B' && n < 3 {
                continue;
            }
            if let Some(g) = try_affine(letter, n) {
                out.push((format!("{letter}{n}(1)"), g));
            }
        }
    }
    out
}

/// Classical name of a connected finite-type matrix, found by diagram
/// isomorphism against the generated list.
pub fn finite_type_label(g: &Gcm) -> Option<String> {
    let n = g.n();
    ['A', 'B', 'C', 'D', 'E', 'F', 'G']
        .into_iter()
        .find_map(|letter| {
            let cand = try_classical(letter, n)?;
            g.isomorphism_to(&cand, None)
                .map(|_| format!("{letter}{n}"))
        })
        .map(|s| if s == "C2" { "B2".into() } else { s })
}
