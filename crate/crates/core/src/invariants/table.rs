use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gauss::{scaled_sum, QuadraticFunction};
use super::{GaussOptions, InvariantsError};
use crate::algebra::{cyclotomic_arg_eighths, Sigma};
use crate::pairing::{block_diagonalize, generator, validate_pairing, BlockSum, GeneratorBlock, LinkingPairing};

/// `k ↦ (r_2^k, σ_2^k)` for `k = 1..=k_max`. Missing entries read as
/// `(0, 0)`, and equality compares over the union of both supports.
#[derive(Debug, Clone, Eq)]
pub struct InvariantTable {
    entries: BTreeMap<u32, (u32, Sigma)>,
}

const ZERO_ENTRY: (u32, Sigma) = (0, Sigma::Finite(0));

impl InvariantTable {
    /// The table of the trivial pairing: `k = 1` only, `(0, 0)`.
    pub fn zero() -> Self {
        Self::from_entries([(1, ZERO_ENTRY)])
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, (u32, Sigma))>) -> Self {
        let entries: BTreeMap<_, _> = entries.into_iter().collect();
        assert!(!entries.contains_key(&0), "table indices start at 1");
        InvariantTable { entries }
    }

    pub fn get(&self, k: u32) -> (u32, Sigma) {
        self.entries.get(&k).copied().unwrap_or(ZERO_ENTRY)
    }

    pub fn r(&self, k: u32) -> u32 {
        self.get(k).0
    }

    pub fn sigma(&self, k: u32) -> Sigma {
        self.get(k).1
    }

    pub fn k_max(&self) -> u32 {
        self.entries.keys().next_back().copied().unwrap_or(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, (u32, Sigma))> + '_ {
        (1..=self.k_max()).map(|k| (k, self.get(k)))
    }

    /// Orders of the underlying group, ascending.
    pub fn group_orders(&self) -> Vec<u64> {
        self.iter()
            .flat_map(|(k, (r, _))| std::iter::repeat_n(1u64 << k, r as usize))
            .collect()
    }

    /// `[k, r, σ]` rows as strings.
    pub fn rows(&self) -> [Vec<String>; 3] {
        let mut rows = [vec!["k".to_string()], vec!["r".to_string()], vec!["σ".to_string()]];
        for (k, (r, s)) in self.iter() {
            rows[0].push(k.to_string());
            rows[1].push(r.to_string());
            rows[2].push(s.to_string());
        }
        rows
    }
}

impl PartialEq for InvariantTable {
    fn eq(&self, other: &Self) -> bool {
        let top = self.k_max().max(other.k_max());
        (1..=top).all(|k| self.get(k) == other.get(k))
    }
}

impl fmt::Display for InvariantTable {
    /// Boxed layout with a `k` row over `r` and `σ` rows.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(1))
            .collect();
        let rule: String = widths.iter().map(|w| format!("+{}", "-".repeat(w + 2))).collect::<String>() + "+";
        let line = |row: &Vec<String>| -> String {
            row.iter()
                .zip(&widths)
                .map(|(cell, w)| format!("| {cell:>w$} ", w = *w))
                .collect::<String>()
                + "|"
        };
        writeln!(f, "{rule}")?;
        writeln!(f, "{}", line(&rows[0]))?;
        writeln!(f, "{rule}")?;
        writeln!(f, "{}", line(&rows[1]))?;
        writeln!(f, "{}", line(&rows[2]))?;
        write!(f, "{rule}")
    }
}

impl Serialize for InvariantTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.k_max() as usize))?;
        for (k, entry) in self.iter() {
            map.serialize_entry(&k.to_string(), &entry)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for InvariantTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, (u32, Sigma)> = BTreeMap::deserialize(d)?;
        let mut entries = BTreeMap::new();
        for (key, v) in raw {
            let k: u32 = key.parse().map_err(D::Error::custom)?;
            if k == 0 {
                return Err(D::Error::custom("table indices start at 1"));
            }
            entries.insert(k, v);
        }
        if entries.is_empty() {
            return Ok(InvariantTable::zero());
        }
        Ok(InvariantTable { entries })
    }
}

/// Holes have `r = 0`; `i8` collects the finite-`σ` entries with `r > 0`.
/// Indices above `k_max` are holes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableClassification {
    pub k_max: u32,
    pub holes: BTreeSet<u32>,
    pub i8: BTreeSet<u32>,
    pub blanks: BTreeSet<u32>,
}

impl TableClassification {
    pub fn is_hole(&self, k: u32) -> bool {
        k > self.k_max || self.holes.contains(&k)
    }

    pub fn is_blank(&self, k: u32) -> bool {
        k > self.k_max || self.blanks.contains(&k)
    }
}

pub fn classify_table(t: &InvariantTable) -> TableClassification {
    let mut c = TableClassification {
        k_max: t.k_max(),
        holes: BTreeSet::new(),
        i8: BTreeSet::new(),
        blanks: BTreeSet::new(),
    };
    for (k, (r, s)) in t.iter() {
        if r == 0 {
            c.holes.insert(k);
        } else if !s.is_infinite() {
            c.i8.insert(k);
        }
    }
    c.blanks = c.holes.union(&c.i8).copied().collect();
    c
}

/// Entrywise sum: ranks add, `σ` adds in `Z/8` with infinity absorbing.
pub fn table_sum(a: &InvariantTable, b: &InvariantTable) -> InvariantTable {
    let top = a.k_max().max(b.k_max());
    InvariantTable::from_entries((1..=top).map(|k| {
        let (ra, sa) = a.get(k);
        let (rb, sb) = b.get(k);
        (k, (ra + rb, sa + sb))
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMethod {
    /// One enumeration of the whole group.
    Direct,
    /// Block-diagonalize, then add cached generator tables.
    Blockwise,
    /// Direct when the group fits under the element cap.
    #[default]
    Auto,
}

fn check_two_group(l: &LinkingPairing) -> Result<(), InvariantsError> {
    if l.prime() != 2 {
        return Err(InvariantsError::NotTwoGroup(l.prime()));
    }
    validate_pairing(l)?;
    Ok(())
}

fn direct_table(l: &LinkingPairing, opts: &GaussOptions) -> Result<InvariantTable, InvariantsError> {
    let q = QuadraticFunction::from_pairing(l)?;
    let counts = q.phase_counts(opts)?;
    let k_max = l.exponent().trailing_zeros() + 1;
    let mut entries = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let r = l.orders().iter().filter(|&&o| o == 1 << k).count() as u32;
        let sigma = cyclotomic_arg_eighths(&scaled_sum(&counts, q.phase_exponent(), k))?;
        entries.push((k, (r, sigma)));
    }
    Ok(InvariantTable::from_entries(entries))
}

/// `(r_2^k, σ_2^k)` of a single index.
pub fn sigma_r(l: &LinkingPairing, k: u32, opts: &GaussOptions) -> Result<(u32, Sigma), InvariantsError> {
    check_two_group(l)?;
    let t = super::tau(l, k, opts)?;
    let r = l.orders().iter().filter(|&&o| o == 1 << k).count() as u32;
    Ok((r, cyclotomic_arg_eighths(&t.sum)?))
}

/// The table of one generator, memoized per process.
pub fn generator_table(g: &GeneratorBlock) -> InvariantTable {
    static CACHE: OnceLock<Mutex<HashMap<GeneratorBlock, InvariantTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("table cache").get(g) {
        return t.clone();
    }
    let l = generator(g).expect("generator blocks are valid");
    let opts = GaussOptions {
        max_elements: u64::MAX,
        workers: 1,
    };
    let t = direct_table(&l, &opts).expect("generator groups are tiny");
    cache.lock().expect("table cache").insert(*g, t.clone());
    t
}

/// Sum of the generator tables of `b`.
pub fn table_of_block_sum(b: &BlockSum) -> InvariantTable {
    b.blocks()
        .iter()
        .fold(InvariantTable::zero(), |acc, g| table_sum(&acc, &generator_table(g)))
}

pub fn invariant_table_with(
    l: &LinkingPairing,
    method: TableMethod,
    opts: &GaussOptions,
) -> Result<InvariantTable, InvariantsError> {
    check_two_group(l)?;
    let direct = match method {
        TableMethod::Direct => true,
        TableMethod::Blockwise => false,
        TableMethod::Auto => l.group().order() <= opts.max_elements.into(),
    };
    if direct {
        direct_table(l, opts)
    } else {
        let d = block_diagonalize(l)?;
        Ok(table_of_block_sum(&d.blocks))
    }
}

/// The complete invariant of `l`, using `LINKFORM_MAX_GROUP` to choose
/// between direct enumeration and the blockwise route.
pub fn invariant_table(l: &LinkingPairing) -> Result<InvariantTable, InvariantsError> {
    invariant_table_with(l, TableMethod::Auto, &GaussOptions::from_env())
}

/// Isomorphism of 2-group pairings by table equality.
pub fn is_isomorphic(a: &LinkingPairing, b: &LinkingPairing) -> Result<bool, InvariantsError> {
    let opts = GaussOptions::from_env();
    Ok(invariant_table_with(a, TableMethod::Auto, &opts)? == invariant_table_with(b, TableMethod::Auto, &opts)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SigmaSpec {
    Fixed(Sigma),
    #[serde(serialize_with = "wildcard")]
    Wildcard,
}

fn wildcard<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("*")
}

impl SigmaSpec {
    pub fn matches(self, s: Sigma) -> bool {
        match self {
            SigmaSpec::Fixed(x) => x == s,
            SigmaSpec::Wildcard => true,
        }
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaSpec::Fixed(s) => write!(f, "{s}"),
            SigmaSpec::Wildcard => write!(f, "*"),
        }
    }
}

/// Shape of a complement table: fixed rank differences, and `σ` fixed to
/// `σ(λ) - σ(λ')` where `k` is a blank of `λ'` with finite `σ(λ')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceTableSpec {
    pub entries: BTreeMap<u32, (u32, SigmaSpec)>,
}

impl DifferenceTableSpec {
    /// `None` when some rank of `λ'` exceeds that of `λ`.
    pub fn new(big: &InvariantTable, small: &InvariantTable) -> Option<Self> {
        let top = big.k_max().max(small.k_max());
        let blanks = classify_table(small);
        let mut entries = BTreeMap::new();
        for k in 1..=top {
            let (rb, sb) = big.get(k);
            let (rs, ss) = small.get(k);
            let r = rb.checked_sub(rs)?;
            // an infinite σ(λ') leaves σ(μ) unconstrained by additivity
            let spec = if blanks.is_blank(k) && !ss.is_infinite() {
                SigmaSpec::Fixed(sb - ss)
            } else {
                SigmaSpec::Wildcard
            };
            entries.insert(k, (r, spec));
        }
        Some(DifferenceTableSpec { entries })
    }

    pub fn group_orders(&self) -> Vec<u64> {
        self.entries
            .iter()
            .flat_map(|(&k, &(r, _))| std::iter::repeat_n(1u64 << k, r as usize))
            .collect()
    }

    pub fn matches(&self, t: &InvariantTable) -> bool {
        let top = self.entries.keys().next_back().copied().unwrap_or(1).max(t.k_max());
        (1..=top).all(|k| {
            let (r, s) = t.get(k);
            match self.entries.get(&k) {
                Some(&(rr, spec)) => r == rr && spec.matches(s),
                None => r == 0 && s == Sigma::Finite(0),
            }
        })
    }
}
