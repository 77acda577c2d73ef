use crate::lattice::{IntMatrix, LatticeVector};

/// What the literature reports for a built-in cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub hilbert_size: usize,
    pub support_count: usize,
    pub uhc: bool,
    pub icp: bool,
    pub flat: bool,
}

#[derive(Clone, Debug)]
pub struct PaperCone {
    pub name: &'static str,
    pub generators: IntMatrix,
    pub expected: Expected,
}

const C10_BASIS: [[i64; 6]; 10] = [
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [1, 0, 2, 1, 1, 2],
    [1, 2, 0, 2, 1, 1],
    [1, 1, 2, 0, 2, 1],
    [1, 1, 1, 2, 0, 2],
    [1, 2, 1, 1, 2, 0],
];

const C12_EXTRA: [[i64; 6]; 2] = [[2, 2, 1, 4, 1, 3], [2, 3, 1, 4, 1, 2]];

const C12_PRIME_EXTRA: [[i64; 6]; 2] = [[0, -1, 2, -1, -1, 2], [1, 0, 3, 0, 0, 3]];

const C15_EXTRA: [[i64; 6]; 5] = [
    [2, 1, 0, 5, 1, 5],
    [1, 0, -1, 4, 0, 4],
    [0, 0, -1, 1, 0, 1],
    [2, 1, 2, 3, 2, 4],
    [1, 1, 0, 3, 1, 2],
];

fn matrix(rows: impl IntoIterator<Item = [i64; 6]>) -> IntMatrix {
    IntMatrix::new(rows.into_iter().map(|r| LatticeVector::from_i64s(&r)).collect(), 6)
}

fn extend_c10(extra: &[[i64; 6]]) -> IntMatrix {
    matrix(C10_BASIS.iter().chain(extra).copied())
}

/// The 6-dimensional counterexample to both covering properties, in the
/// embedding `z_1, ..., z_10`.
pub fn c10() -> PaperCone {
    PaperCone {
        name: "c10",
        generators: matrix(C10_BASIS),
        expected: Expected { hilbert_size: 10, support_count: 27, uhc: false, icp: false, flat: true },
    }
}

pub fn c12() -> PaperCone {
    PaperCone {
        name: "c12",
        generators: extend_c10(&C12_EXTRA),
        expected: Expected { hilbert_size: 12, support_count: 39, uhc: false, icp: false, flat: true },
    }
}

pub fn c12_prime() -> PaperCone {
    PaperCone {
        name: "c12p",
        generators: extend_c10(&C12_PRIME_EXTRA),
        expected: Expected { hilbert_size: 12, support_count: 40, uhc: false, icp: true, flat: true },
    }
}

pub fn c15() -> PaperCone {
    PaperCone {
        name: "c15",
        generators: extend_c10(&C15_EXTRA),
        expected: Expected { hilbert_size: 15, support_count: 36, uhc: false, icp: true, flat: false },
    }
}

pub fn all() -> Vec<PaperCone> {
    vec![c10(), c12(), c12_prime(), c15()]
}

/// Looks up a built-in cone; accepts `c12'` as well as `c12p`.
pub fn by_name(name: &str) -> Option<PaperCone> {
    let key = name.trim().to_ascii_lowercase();
    let key = key.strip_prefix("corpus:").unwrap_or(&key);
    match key {
        "c10" => Some(c10()),
        "c12" => Some(c12()),
        "c12p" | "c12'" | "c12prime" | "c12_prime" => Some(c12_prime()),
        "c15" => Some(c15()),
        _ => None,
    }
}

/// Edge incidence vectors of `K_5` split into the pentagon `1-2-3-4-5-1`
/// (prefixed by 0) and the pentagram `1-3-5-2-4-1` (prefixed by 1).
pub fn k5_cone() -> IntMatrix {
    let outer = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
    let inner = [(1, 3), (3, 5), (5, 2), (2, 4), (4, 1)];
    let edge = |prefix: i64, (a, b): (usize, usize)| {
        let mut v = [0i64; 6];
        v[0] = prefix;
        v[a] = 1;
        v[b] = 1;
        v
    };
    matrix(outer.iter().map(|&e| edge(0, e)).chain(inner.iter().map(|&e| edge(1, e))))
}
