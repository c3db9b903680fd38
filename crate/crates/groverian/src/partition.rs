//! Qubit partitions: divisions of the register `{0..n-1}` into disjoint
//! non-empty blocks ("parties"). A partition is stored in canonical form:
//! indices ascending within each block, blocks ordered by their smallest
//! element.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A division of `n` qubit indices into `m` disjoint, non-empty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from blocks, canonicalizing their order. Fails if
    /// the blocks are not disjoint, leave an index uncovered, contain an
    /// index outside `0..n`, or any block is empty.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks given".into()));
        }
        let mut blocks: Vec<Vec<usize>> = blocks;
        let mut seen = vec![false; n];
        let mut covered = 0usize;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &q in block.iter() {
                if q >= n {
                    return Err(Error::InvalidPartition(format!(
                        "index {q} out of range for {n} qubits"
                    )));
                }
                if seen[q] {
                    return Err(Error::InvalidPartition(format!(
                        "index {q} appears in more than one block"
                    )));
                }
                seen[q] = true;
                covered += 1;
            }
        }
        if covered != n {
            let missing: Vec<String> = (0..n)
                .filter(|&q| !seen[q])
                .map(|q| q.to_string())
                .collect();
            return Err(Error::InvalidPartition(format!(
                "indices not covered: {}",
                missing.join(", ")
            )));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// The qubit count of the partitioned register.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The number of parties.
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Hilbert-space dimension of one party, `2^(block size)`.
    pub fn party_dim(&self, party: usize) -> usize {
        1 << self.blocks[party].len()
    }

    /// Maps a global basis index to the local basis index of one party.
    ///
    /// Qubit 0 is the most significant bit of the global index; within a
    /// block the first (smallest) qubit is the most significant bit of the
    /// local index.
    pub fn local_index(&self, party: usize, global_index: usize) -> usize {
        let block = &self.blocks[party];
        let s = block.len();
        let mut local = 0usize;
        for (j, &q) in block.iter().enumerate() {
            let bit = (global_index >> (self.n - 1 - q)) & 1;
            local |= bit << (s - 1 - j);
        }
        local
    }

    /// The partition with `m - 1` single-qubit parties `{0}, .., {m-2}` and
    /// one party holding all remaining qubits.
    pub fn single_qubit_plus_rest(n: usize, m: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::PartyCountOutOfRange { m, n });
        }
        let mut blocks: Vec<Vec<usize>> = (0..m.saturating_sub(1)).map(|q| vec![q]).collect();
        blocks.push((m - 1..n).collect());
        Self::new(n, blocks)
    }

    /// The full split into `n` single-qubit parties.
    pub fn singletons(n: usize) -> Result<Self> {
        Self::single_qubit_plus_rest(n, n)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the `"0,1|2|3,4,5"` form. The qubit count is the total number
    /// of indices; they must cover `0..n-1` exactly.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut count = 0usize;
        for part in s.split('|') {
            let mut block = Vec::new();
            for tok in part.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    return Err(Error::InvalidPartition(format!(
                        "empty index in block \"{part}\""
                    )));
                }
                let q: usize = tok.parse().map_err(|_| {
                    Error::InvalidPartition(format!("\"{tok}\" is not a qubit index"))
                })?;
                block.push(q);
                count += 1;
            }
            blocks.push(block);
        }
        Partition::new(count, blocks)
    }
}

/// Stirling number of the second kind: the number of ways to partition a set
/// of `n` elements into `m` non-empty blocks.
pub fn stirling2(n: usize, m: usize) -> u64 {
    if m > n {
        return 0;
    }
    if n == 0 {
        return 1; // S(0, 0)
    }
    if m == 0 {
        return 0;
    }
    stirling2(n - 1, m - 1) + (m as u64) * stirling2(n - 1, m)
}

/// All set partitions of `{0..n-1}` into exactly `m` non-empty blocks, each
/// emitted once. Enumeration follows restricted-growth strings in
/// lexicographic order, which yields every partition already in canonical
/// form.
pub fn enumerate_partitions(n: usize, m: usize) -> Result<Vec<Partition>> {
    if m == 0 || m > n {
        return Err(Error::PartyCountOutOfRange { m, n });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fill(&mut rgs, 1, 0, n, m, &mut out);
    Ok(out)
}

fn fill(rgs: &mut [usize], pos: usize, max_used: usize, n: usize, m: usize, out: &mut Vec<Partition>) {
    if pos == n {
        if max_used + 1 == m {
            let mut blocks = vec![Vec::new(); m];
            for (q, &b) in rgs.iter().enumerate() {
                blocks[b].push(q);
            }
            out.push(Partition { n, blocks });
        }
        return;
    }
    // Prune: remaining positions must still allow reaching exactly m blocks.
    let remaining = n - pos;
    for value in 0..=(max_used + 1).min(m - 1) {
        let new_max = max_used.max(value);
        if new_max + 1 + remaining - 1 < m {
            continue;
        }
        rgs[pos] = value;
        fill(rgs, pos + 1, new_max, n, m, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_split_is_unique() {
        let parts = enumerate_partitions(3, 3).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].blocks(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn three_qubits_two_parties() {
        let parts = enumerate_partitions(3, 2).unwrap();
        assert_eq!(parts.len(), 3); // S(3, 2)
        let expected = [
            Partition::new(3, vec![vec![0], vec![1, 2]]).unwrap(),
            Partition::new(3, vec![vec![1], vec![0, 2]]).unwrap(),
            Partition::new(3, vec![vec![2], vec![0, 1]]).unwrap(),
        ];
        for p in &expected {
            assert!(parts.contains(p), "missing {p}");
        }
    }

    #[test]
    fn four_qubits_two_parties() {
        assert_eq!(enumerate_partitions(4, 2).unwrap().len(), 7); // S(4, 2)
    }

    #[test]
    fn enumeration_matches_stirling_recursion() {
        for n in 1..=8 {
            for m in 1..=n {
                let count = enumerate_partitions(n, m).unwrap().len() as u64;
                assert_eq!(count, stirling2(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn enumerated_partitions_are_distinct_and_valid() {
        let parts = enumerate_partitions(6, 3).unwrap();
        for (i, p) in parts.iter().enumerate() {
            // Re-validating through the constructor checks the invariants.
            let rebuilt = Partition::new(6, p.blocks().to_vec()).unwrap();
            assert_eq!(&rebuilt, p);
            for q in parts.iter().skip(i + 1) {
                assert_ne!(p, q);
            }
        }
    }

    #[test]
    fn single_qubit_plus_rest_examples() {
        let p = Partition::single_qubit_plus_rest(5, 3).unwrap();
        assert_eq!(p.blocks(), &[vec![0], vec![1], vec![2, 3, 4]]);
        let p = Partition::single_qubit_plus_rest(4, 4).unwrap();
        assert_eq!(p.blocks(), &[vec![0], vec![1], vec![2], vec![3]]);
        let p = Partition::single_qubit_plus_rest(6, 1).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 2, 3, 4, 5]]);
        assert!(Partition::single_qubit_plus_rest(4, 5).is_err());
        assert!(Partition::single_qubit_plus_rest(4, 0).is_err());
    }

    #[test]
    fn party_count_out_of_range() {
        assert!(enumerate_partitions(3, 0).is_err());
        assert!(enumerate_partitions(3, 4).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let p: Partition = "0,1|2|3,4,5".parse().unwrap();
        assert_eq!(p.n(), 6);
        assert_eq!(p.m(), 3);
        assert_eq!(p.to_string(), "0,1|2|3,4,5");
        // Non-canonical input is canonicalized.
        let q: Partition = "2|1,0".parse().unwrap();
        assert_eq!(q.to_string(), "0,1|2");
    }

    #[test]
    fn parse_rejects_bad_strings() {
        assert!("0|0,1".parse::<Partition>().is_err()); // duplicate
        assert!("0|2".parse::<Partition>().is_err()); // gap: index 2 with n=2
        assert!("0||1".parse::<Partition>().is_err()); // empty block
        assert!("0,x|1".parse::<Partition>().is_err()); // not a number
    }

    #[test]
    fn local_index_follows_bit_convention() {
        // Qubit 0 is the most significant bit of the global index.
        let p: Partition = "0,1|2".parse().unwrap();
        // global 5 = 101b: qubit0 = 1, qubit1 = 0, qubit2 = 1
        assert_eq!(p.local_index(0, 5), 0b10);
        assert_eq!(p.local_index(1, 5), 1);
        let q: Partition = "0,2|1".parse().unwrap();
        // party {0,2}: local msb is qubit 0, lsb is qubit 2
        assert_eq!(q.local_index(0, 5), 0b11);
        assert_eq!(q.local_index(1, 5), 0);
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(3, 2), 3);
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling2(5, 3), 25);
        assert_eq!(stirling2(10, 5), 42525);
    }
}
