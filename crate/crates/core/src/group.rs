//! Finite groups given by multiplication tables.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty group table")]
    Empty,
    #[error("table is not square or has out-of-range entries")]
    Malformed,
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
}

/// A finite group on elements `0..order`, with `table[g][h] = g·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table (closure, associativity, identity,
    /// inverses).
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GroupError::Malformed);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity =
            (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)).ok_or(GroupError::NoIdentity)?;
        let inverses = (0..n)
            .map(|g| {
                (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity).ok_or(GroupError::NoInverse(g))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroup { name: name.into(), table, identity, inverses })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(format!("Z{n}"), table).expect("cyclic table is a group")
    }

    /// The symmetric group on three letters, elements are permutations in
    /// lexicographic order; product is composition `(g·h)(i) = h(g(i))`
    /// so that right actions compose left to right.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&x| x == p).unwrap();
        let table = perms.iter().map(|g| perms.iter().map(|h| index([h[g[0]], h[g[1]], h[g[2]]])).collect()).collect();
        FiniteGroup::from_table("S3", table).expect("S3 table is a group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (m, n) = (a.order(), b.order());
        let table =
            (0..m * n).map(|x| (0..m * n).map(|y| a.mul(x / n, y / n) * n + b.mul(x % n, y % n)).collect()).collect();
        FiniteGroup::from_table(format!("{}x{}", a.name, b.name), table).expect("direct product is a group")
    }

    /// One representative of every isomorphism class of groups of order ≤ 6.
    pub fn all_up_to_order_6() -> Vec<FiniteGroup> {
        vec![
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
            FiniteGroup::cyclic(5),
            FiniteGroup::cyclic(6),
            FiniteGroup::symmetric3(),
        ]
    }

    /// Looks up `z2`, `z3`, `s3`, ... by name (case-insensitive).
    pub fn by_name(name: &str) -> Option<FiniteGroup> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "s3" => Some(FiniteGroup::symmetric3()),
            "z2xz2" | "v4" | "klein" => {
                Some(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)))
            }
            "trivial" | "z1" => Some(FiniteGroup::trivial()),
            _ => lower
                .strip_prefix('z')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n > 0)
                .map(FiniteGroup::cyclic),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_are_valid() {
        let gs = FiniteGroup::all_up_to_order_6();
        let orders: Vec<_> = gs.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6]);
        assert!(!FiniteGroup::symmetric3().is_abelian());
        assert!(gs[..7].iter().all(|g| g.is_abelian()));
    }

    #[test]
    fn s3_has_non_involutive_elements() {
        let g = FiniteGroup::symmetric3();
        assert!(g.elements().any(|x| g.inv(x) != x));
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteGroup::from_table("e", vec![]), Err(GroupError::Empty));
        // constant table: not a group
        let bad = vec![vec![0, 0], vec![0, 0]];
        assert!(FiniteGroup::from_table("bad", bad).is_err());
        let nonassoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table("na", nonassoc).is_err());
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(FiniteGroup::by_name("z3").unwrap().order(), 3);
        assert_eq!(FiniteGroup::by_name("S3").unwrap().order(), 6);
        assert!(FiniteGroup::by_name("q8").is_none());
    }
}
