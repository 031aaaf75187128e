//! Canonical structures of skew-symmetric pencils (under congruence) and of
//! general pencils (under strict equivalence).
//!
//! A skew structure is a multiset of `M_m` blocks plus, per distinct
//! eigenvalue, a multiset of `H_h` block sizes. `K_k` blocks are `H_k` at the
//! eigenvalue infinity. A general structure is the Kronecker form: `L_k`,
//! `Lt_k` and `E_k(mu)` blocks.
//!
//! All multisets are kept sorted, so derived equality is structural equality
//! of the canonical form. Two structures denote the same stratification node
//! when their anonymous normal forms are equal.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::IntegerPartition;

pub use parse::parse_structure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("zero-size block {block} at column {column}")]
    ZeroBlock { column: usize, block: String },
    #[error("block {block} at column {column} is not allowed in a {kind} structure")]
    KindMismatch {
        column: usize,
        block: String,
        kind: Kind,
    },
    #[error("pencil {0} cannot be skew-symmetrized")]
    NotSkewSymmetrizable(String),
    #[error("selected M sizes {0:?} are not a sub-multiset of the structure")]
    SelectionNotSubset(Vec<usize>),
    #[error("block sizes must be positive")]
    EmptyBlock,
    #[error("Jordan part of a skew structure must be even, got {0}")]
    OddJordanPart(IntegerPartition),
}

/// Which equivalence the structure lives under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Skew,
    General,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Skew => "skew",
            Kind::General => "general",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "skew" => Ok(Kind::Skew),
            "general" => Ok(Kind::General),
            other => Err(format!("unknown kind `{other}` (expected skew or general)")),
        }
    }
}

/// Eigenvalue of a block group: a symbolic token or a pinned value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EigenvalueLabel {
    Anonymous(String),
    Finite(BigRational),
    Infinity,
}

impl EigenvalueLabel {
    pub fn is_pinned(&self) -> bool {
        !matches!(self, EigenvalueLabel::Anonymous(_))
    }

    pub fn finite(value: i64) -> Self {
        EigenvalueLabel::Finite(BigRational::from_integer(BigInt::from(value)))
    }

    /// Label assigned to the `index`-th group of an anonymous normal form:
    /// `a`, `b`, ..., `z`, `aa`, `ab`, ...
    pub fn anonymous_name(mut index: usize) -> String {
        let mut name = Vec::new();
        loop {
            name.push(b'a' + (index % 26) as u8);
            if index < 26 {
                break;
            }
            index = index / 26 - 1;
        }
        name.reverse();
        String::from_utf8(name).expect("ascii")
    }

    /// Placeholder for a newly created eigenvalue; `index` keeps several
    /// fresh eigenvalues of one transition apart until normalization.
    pub(crate) fn fresh(index: usize) -> Self {
        EigenvalueLabel::Anonymous(format!("~fresh{index}"))
    }
}

impl fmt::Display for EigenvalueLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenvalueLabel::Anonymous(name) => f.write_str(name),
            EigenvalueLabel::Finite(value) => {
                if value.is_integer() {
                    write!(f, "{}", value.numer())
                } else {
                    write!(f, "{}/{}", value.numer(), value.denom())
                }
            }
            EigenvalueLabel::Infinity => f.write_str("inf"),
        }
    }
}

/// Block sizes attached to one distinct eigenvalue, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenGroup {
    pub label: EigenvalueLabel,
    sizes: Vec<usize>,
}

impl EigenGroup {
    pub fn new(label: EigenvalueLabel, mut sizes: Vec<usize>) -> Result<Self, StructureError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(StructureError::EmptyBlock);
        }
        sizes.sort_unstable();
        Ok(Self { label, sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn largest(&self) -> usize {
        *self.sizes.last().expect("groups are non-empty")
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Weyr characteristic of the sizes: column `k - 1` counts blocks of size `>= k`.
    pub fn weyr(&self) -> IntegerPartition {
        IntegerPartition::from(self.sizes.as_slice()).conjugate()
    }

    fn order_key(&self) -> impl Ord + '_ {
        std::cmp::Reverse(self.sizes.iter().rev().collect::<Vec<_>>())
    }
}

/// The regular part: distinct eigenvalues with their block sizes.
///
/// Groups are kept in canonical order: larger size sequences (compared
/// lexicographically from the largest block down) first, ties by label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spectrum {
    groups: Vec<EigenGroup>,
}

impl Spectrum {
    /// Collects `(label, size)` blocks; equal labels merge into one group.
    pub fn from_blocks<I>(blocks: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (EigenvalueLabel, usize)>,
    {
        let mut by_label: BTreeMap<EigenvalueLabel, Vec<usize>> = BTreeMap::new();
        for (label, size) in blocks {
            if size == 0 {
                return Err(StructureError::EmptyBlock);
            }
            by_label.entry(label).or_default().push(size);
        }
        let groups = by_label
            .into_iter()
            .map(|(label, sizes)| EigenGroup::new(label, sizes))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_groups(groups))
    }

    pub(crate) fn from_groups(mut groups: Vec<EigenGroup>) -> Self {
        groups.sort_by(|a, b| a.order_key().cmp(&b.order_key()).then(a.label.cmp(&b.label)));
        Self { groups }
    }

    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Sum of all block sizes.
    pub fn total(&self) -> usize {
        self.groups.iter().map(EigenGroup::total).sum()
    }

    pub fn normalized(&self, anonymous: bool) -> Self {
        if !anonymous {
            return Self::from_groups(self.groups.clone());
        }
        let mut groups = self.groups.clone();
        for g in &mut groups {
            g.label = EigenvalueLabel::Anonymous(String::new());
        }
        let mut spectrum = Self::from_groups(groups);
        for (i, g) in spectrum.groups.iter_mut().enumerate() {
            g.label = EigenvalueLabel::Anonymous(EigenvalueLabel::anonymous_name(i));
        }
        spectrum
    }

    /// Replaces one block of group `index`, dropping the group if it empties.
    /// `from == 0` adds a block, `to == 0` removes one.
    pub(crate) fn replace_block(&self, index: usize, from: usize, to: usize) -> Self {
        let mut groups = self.groups.clone();
        let sizes = &mut groups[index].sizes;
        if from > 0 {
            let pos = sizes.iter().position(|&s| s == from).expect("block present");
            sizes.remove(pos);
        }
        if to > 0 {
            sizes.push(to);
            sizes.sort_unstable();
        }
        groups.retain(|g| !g.sizes.is_empty());
        Self::from_groups(groups)
    }

    /// Sets the sizes of group `index`, dropping it when `sizes` is empty.
    pub(crate) fn with_group_sizes(&self, index: usize, mut sizes: Vec<usize>) -> Self {
        let mut groups = self.groups.clone();
        sizes.retain(|&s| s > 0);
        sizes.sort_unstable();
        groups[index].sizes = sizes;
        groups.retain(|g| !g.sizes.is_empty());
        Self::from_groups(groups)
    }

    pub(crate) fn with_group(&self, label: EigenvalueLabel, sizes: Vec<usize>) -> Self {
        let mut groups = self.groups.clone();
        groups.push(EigenGroup::new(label, sizes).expect("non-empty group"));
        Self::from_groups(groups)
    }

    /// Rewrites every group's sizes at once; emptied groups are dropped.
    pub(crate) fn map_sizes(&self, mut f: impl FnMut(usize, &[usize]) -> Vec<usize>) -> Self {
        let mut groups = Vec::with_capacity(self.groups.len());
        for (idx, g) in self.groups.iter().enumerate() {
            let mut sizes = f(idx, &g.sizes);
            sizes.retain(|&s| s > 0);
            sizes.sort_unstable();
            if !sizes.is_empty() {
                groups.push(EigenGroup {
                    label: g.label.clone(),
                    sizes,
                });
            }
        }
        Self::from_groups(groups)
    }

    fn doubled(&self) -> Self {
        let groups = self
            .groups
            .iter()
            .map(|g| EigenGroup {
                label: g.label.clone(),
                sizes: double_multiset(&g.sizes),
            })
            .collect();
        Self::from_groups(groups)
    }

    fn fmt_terms(&self, terms: &mut Vec<String>, skew: bool) {
        for g in &self.groups {
            for (size, count) in runs(&g.sizes) {
                let block = match (&g.label, skew) {
                    (EigenvalueLabel::Infinity, true) => format!("K{size}"),
                    (label, true) => format!("H{size}({label})"),
                    (label, false) => format!("E{size}({label})"),
                };
                terms.push(with_count(block, count));
            }
        }
    }
}

fn double_multiset(sizes: &[usize]) -> Vec<usize> {
    sizes.iter().flat_map(|&s| [s, s]).collect()
}

fn runs(sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &s in sorted {
        match out.last_mut() {
            Some((v, c)) if *v == s => *c += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

fn with_count(block: String, count: usize) -> String {
    if count == 1 {
        block
    } else {
        format!("{block}*{count}")
    }
}

fn join_terms(f: &mut fmt::Formatter<'_>, terms: &[String]) -> fmt::Result {
    f.write_str(&terms.join(" + "))
}

/// Weyr characteristic `R` (or `L`) of a multiset of minimal indices: column
/// `k` counts indices `>= k`, columns numbered from zero.
pub fn index_weyr(indices: &[usize]) -> IntegerPartition {
    IntegerPartition::from_unsorted(indices.iter().map(|&c| c + 1).collect()).conjugate()
}

/// Inverse of [`index_weyr`], ascending.
pub fn indices_from_weyr(r: &IntegerPartition) -> Vec<usize> {
    let mut out: Vec<usize> = r.conjugate().parts().iter().map(|&c| c - 1).collect();
    out.sort_unstable();
    out
}

/// Block sizes (ascending) whose Weyr characteristic is `j`.
pub fn sizes_from_weyr(j: &IntegerPartition) -> Vec<usize> {
    let mut out = j.conjugate().parts().to_vec();
    out.sort_unstable();
    out
}

/// Weyr characteristics `R`, `L` and `J` per eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeyrCharacteristics {
    pub r: IntegerPartition,
    pub l: IntegerPartition,
    pub j: BTreeMap<EigenvalueLabel, IntegerPartition>,
}

/// Canonical form of an `n x n` skew-symmetric pencil under congruence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewStructure {
    m_sizes: Vec<usize>,
    spectrum: Spectrum,
}

impl SkewStructure {
    pub fn new(mut m_sizes: Vec<usize>, spectrum: Spectrum) -> Self {
        m_sizes.sort_unstable();
        Self { m_sizes, spectrum }
    }

    /// `M0` repeated `count` times.
    pub fn zero_blocks(count: usize) -> Self {
        Self::new(vec![0; count], Spectrum::default())
    }

    pub fn m_sizes(&self) -> &[usize] {
        &self.m_sizes
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn groups(&self) -> &[EigenGroup] {
        self.spectrum.groups()
    }

    pub fn size(&self) -> usize {
        self.m_sizes.iter().map(|m| 2 * m + 1).sum::<usize>() + 2 * self.spectrum.total()
    }

    pub fn total_size(&self) -> (usize, usize) {
        let n = self.size();
        (n, n)
    }

    pub fn max_m(&self) -> Option<usize> {
        self.m_sizes.last().copied()
    }

    pub fn normalized(&self, anonymous: bool) -> Self {
        Self {
            m_sizes: self.m_sizes.clone(),
            spectrum: self.spectrum.normalized(anonymous),
        }
    }

    pub(crate) fn with_parts(&self, m_sizes: Vec<usize>, spectrum: Spectrum) -> Self {
        Self::new(m_sizes, spectrum)
    }

    pub fn weyr(&self) -> WeyrCharacteristics {
        let r = index_weyr(&self.m_sizes);
        let j = self
            .spectrum
            .groups()
            .iter()
            .map(|g| (g.label.clone(), g.weyr().scale(2, 1).expect("integral")))
            .collect();
        WeyrCharacteristics { l: r.clone(), r, j }
    }

    /// Rebuilds a structure from `R` and per-eigenvalue `J` (all parts even).
    pub fn from_weyr(
        r: &IntegerPartition,
        j: Vec<(EigenvalueLabel, IntegerPartition)>,
    ) -> Result<Self, StructureError> {
        let mut groups = Vec::with_capacity(j.len());
        for (label, part) in j {
            let half = part
                .scale(1, 2)
                .map_err(|_| StructureError::OddJordanPart(part.clone()))?;
            groups.push(EigenGroup::new(label, sizes_from_weyr(&half))?);
        }
        Ok(Self::new(indices_from_weyr(r), Spectrum::from_groups(groups)))
    }

    /// Sum of the Kronecker indices of the expansion.
    pub fn normal_rank(&self) -> usize {
        2 * self.m_sizes.iter().sum::<usize>() + 2 * self.spectrum.total()
    }

    /// Number of `L` blocks, i.e. `M` blocks.
    pub fn r0(&self) -> usize {
        self.m_sizes.len()
    }

    pub fn to_kcf(&self) -> GeneralStructure {
        GeneralStructure::new(
            self.m_sizes.clone(),
            self.m_sizes.clone(),
            self.spectrum.doubled(),
        )
    }

    pub fn append_m0(&self) -> Self {
        let mut m = self.m_sizes.clone();
        m.push(0);
        Self::new(m, self.spectrum.clone())
    }

    /// The `p x q` block `W` of the permuted form `[0 W; -W^T 0]`: one
    /// `E_h(mu)` per `H_h(mu)`, and `L_m` per `M_m` unless the size is listed
    /// in `transposed`, in which case `Lt_m`.
    pub fn half_structure(&self, transposed: &[usize]) -> Result<GeneralStructure, StructureError> {
        let mut rest = self.m_sizes.clone();
        for &t in transposed {
            match rest.iter().position(|&m| m == t) {
                Some(pos) => {
                    rest.remove(pos);
                }
                None => return Err(StructureError::SelectionNotSubset(transposed.to_vec())),
            }
        }
        Ok(GeneralStructure::new(
            rest,
            transposed.to_vec(),
            self.spectrum.clone(),
        ))
    }
}

impl fmt::Display for SkewStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = runs(&self.m_sizes)
            .into_iter()
            .map(|(m, c)| with_count(format!("M{m}"), c))
            .collect();
        self.spectrum.fmt_terms(&mut terms, true);
        join_terms(f, &terms)
    }
}

impl FromStr for SkewStructure {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_structure(s, Kind::Skew)? {
            CanonicalStructure::Skew(s) => Ok(s),
            CanonicalStructure::General(_) => unreachable!("parser honours the kind"),
        }
    }
}

/// Kronecker canonical form of an `m x n` pencil.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralStructure {
    l_sizes: Vec<usize>,
    lt_sizes: Vec<usize>,
    spectrum: Spectrum,
}

impl GeneralStructure {
    pub fn new(mut l_sizes: Vec<usize>, mut lt_sizes: Vec<usize>, spectrum: Spectrum) -> Self {
        l_sizes.sort_unstable();
        lt_sizes.sort_unstable();
        Self {
            l_sizes,
            lt_sizes,
            spectrum,
        }
    }

    pub fn l_sizes(&self) -> &[usize] {
        &self.l_sizes
    }

    pub fn lt_sizes(&self) -> &[usize] {
        &self.lt_sizes
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn groups(&self) -> &[EigenGroup] {
        self.spectrum.groups()
    }

    pub fn total_size(&self) -> (usize, usize) {
        let e = self.spectrum.total();
        let (l, lt) = (
            self.l_sizes.iter().sum::<usize>(),
            self.lt_sizes.iter().sum::<usize>(),
        );
        let rows = e + l + lt + self.lt_sizes.len();
        let cols = e + l + lt + self.l_sizes.len();
        (rows, cols)
    }

    pub fn normalized(&self, anonymous: bool) -> Self {
        Self {
            l_sizes: self.l_sizes.clone(),
            lt_sizes: self.lt_sizes.clone(),
            spectrum: self.spectrum.normalized(anonymous),
        }
    }

    pub(crate) fn with_parts(
        &self,
        l_sizes: Vec<usize>,
        lt_sizes: Vec<usize>,
        spectrum: Spectrum,
    ) -> Self {
        Self::new(l_sizes, lt_sizes, spectrum)
    }

    pub fn weyr(&self) -> WeyrCharacteristics {
        WeyrCharacteristics {
            r: index_weyr(&self.l_sizes),
            l: index_weyr(&self.lt_sizes),
            j: self
                .spectrum
                .groups()
                .iter()
                .map(|g| (g.label.clone(), g.weyr()))
                .collect(),
        }
    }

    pub fn from_weyr(
        r: &IntegerPartition,
        l: &IntegerPartition,
        j: Vec<(EigenvalueLabel, IntegerPartition)>,
    ) -> Result<Self, StructureError> {
        let groups = j
            .into_iter()
            .map(|(label, part)| EigenGroup::new(label, sizes_from_weyr(&part)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(
            indices_from_weyr(r),
            indices_from_weyr(l),
            Spectrum::from_groups(groups),
        ))
    }

    /// Sum of all Kronecker indices.
    pub fn normal_rank(&self) -> usize {
        self.spectrum.total()
            + self.l_sizes.iter().sum::<usize>()
            + self.lt_sizes.iter().sum::<usize>()
    }

    /// Every `E_k(mu)` has even multiplicity and the `L` and `Lt` multisets agree.
    pub fn can_skew_symmetrize(&self) -> bool {
        self.l_sizes == self.lt_sizes
            && self
                .spectrum
                .groups()
                .iter()
                .all(|g| runs(g.sizes()).iter().all(|&(_, c)| c % 2 == 0))
    }

    pub fn skew_from_kcf(&self) -> Result<SkewStructure, StructureError> {
        if !self.can_skew_symmetrize() {
            return Err(StructureError::NotSkewSymmetrizable(self.to_string()));
        }
        let groups = self
            .spectrum
            .groups()
            .iter()
            .map(|g| {
                let halved = g.sizes().iter().step_by(2).copied().collect();
                EigenGroup::new(g.label.clone(), halved)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SkewStructure::new(
            self.l_sizes.clone(),
            Spectrum::from_groups(groups),
        ))
    }
}

impl fmt::Display for GeneralStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = runs(&self.l_sizes)
            .into_iter()
            .map(|(k, c)| with_count(format!("L{k}"), c))
            .collect();
        terms.extend(
            runs(&self.lt_sizes)
                .into_iter()
                .map(|(k, c)| with_count(format!("Lt{k}"), c)),
        );
        self.spectrum.fmt_terms(&mut terms, false);
        join_terms(f, &terms)
    }
}

impl FromStr for GeneralStructure {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_structure(s, Kind::General)? {
            CanonicalStructure::General(g) => Ok(g),
            CanonicalStructure::Skew(_) => unreachable!("parser honours the kind"),
        }
    }
}

/// Either kind of structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalStructure {
    Skew(SkewStructure),
    General(GeneralStructure),
}

impl CanonicalStructure {
    pub fn kind(&self) -> Kind {
        match self {
            CanonicalStructure::Skew(_) => Kind::Skew,
            CanonicalStructure::General(_) => Kind::General,
        }
    }

    pub fn total_size(&self) -> (usize, usize) {
        match self {
            CanonicalStructure::Skew(s) => s.total_size(),
            CanonicalStructure::General(g) => g.total_size(),
        }
    }

    pub fn weyr(&self) -> WeyrCharacteristics {
        match self {
            CanonicalStructure::Skew(s) => s.weyr(),
            CanonicalStructure::General(g) => g.weyr(),
        }
    }

    pub fn normal_rank(&self) -> usize {
        match self {
            CanonicalStructure::Skew(s) => s.normal_rank(),
            CanonicalStructure::General(g) => g.normal_rank(),
        }
    }

    pub fn normalize(&self, anonymous: bool) -> Self {
        match self {
            CanonicalStructure::Skew(s) => CanonicalStructure::Skew(s.normalized(anonymous)),
            CanonicalStructure::General(g) => {
                CanonicalStructure::General(g.normalized(anonymous))
            }
        }
    }

    pub fn as_skew(&self) -> Option<&SkewStructure> {
        match self {
            CanonicalStructure::Skew(s) => Some(s),
            CanonicalStructure::General(_) => None,
        }
    }

    pub fn as_general(&self) -> Option<&GeneralStructure> {
        match self {
            CanonicalStructure::General(g) => Some(g),
            CanonicalStructure::Skew(_) => None,
        }
    }
}

impl fmt::Display for CanonicalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalStructure::Skew(s) => s.fmt(f),
            CanonicalStructure::General(g) => g.fmt(f),
        }
    }
}

impl From<SkewStructure> for CanonicalStructure {
    fn from(s: SkewStructure) -> Self {
        CanonicalStructure::Skew(s)
    }
}

impl From<GeneralStructure> for CanonicalStructure {
    fn from(g: GeneralStructure) -> Self {
        CanonicalStructure::General(g)
    }
}

/// Canonical text of a structure.
pub fn format_structure(s: &CanonicalStructure) -> String {
    s.to_string()
}
