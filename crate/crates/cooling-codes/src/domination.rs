//! Domination mappings: injective maps from {0,1}^m into the radius-w
//! Hamming ball of {0,1}^n where every output coordinate is owned by one
//! input coordinate, and switching the owner off forces the output
//! coordinate to zero. Composing such a mapping with a cooling code yields a
//! low-power cooling code: hot output wires pull back to at most as many hot
//! input positions, the cooling code avoids those, and domination keeps the
//! image clear of the hot wires.
//!
//! Mappings are synthesized by maximum bipartite matching between inputs and
//! ball words compatible with them, which doubles as an existence oracle:
//! when no mapping exists for a partition the matching yields a Hall
//! witness.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::bits::BitWord;
use crate::error::{Error, Result};
use crate::model::{
    Codeset, CodesetProvider, Codeword, GeneratorDescriptor, HotSet, LpcCode, SpreadParams,
};
use crate::spread::CoolingCode;

/// Partition of the n output coordinates into m nonempty groups; group i is
/// owned by input coordinate i. This is the right-degree-one normal form of
/// the domination graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationGraph {
    groups: Vec<Vec<usize>>,
    n: usize,
}

impl DominationGraph {
    pub fn new(groups: Vec<Vec<usize>>) -> Result<DominationGraph> {
        let mut seen = BTreeSet::new();
        let mut max = 0usize;
        for (i, g) in groups.iter().enumerate() {
            if g.is_empty() {
                return Err(Error::param(format!("group {i} is empty")));
            }
            for &j in g {
                if !seen.insert(j) {
                    return Err(Error::param(format!("coordinate {j} in two groups")));
                }
                max = max.max(j);
            }
        }
        let n = seen.len();
        if seen.iter().next_back() != Some(&(n - 1)) || max != n - 1 {
            return Err(Error::param(
                "groups must partition a contiguous range 0..n",
            ));
        }
        let mut groups = groups;
        for g in &mut groups {
            g.sort_unstable();
        }
        Ok(DominationGraph { groups, n })
    }

    pub fn m(&self) -> usize {
        self.groups.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// The input coordinate owning output coordinate j.
    pub fn owner(&self, j: usize) -> usize {
        self.groups
            .iter()
            .position(|g| g.binary_search(&j).is_ok())
            .expect("groups partition the coordinates")
    }

    fn group_mask(&self, i: usize) -> BitWord {
        BitWord::from_support(self.n, self.groups[i].iter().copied())
    }
}

/// Evidence that no mapping exists for a partition: a set of inputs whose
/// compatible ball words number fewer than the inputs themselves.
#[derive(Clone, Debug)]
pub struct HallWitness {
    pub inputs: Vec<u64>,
    pub image_count: usize,
}

impl std::fmt::Display for HallWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} inputs share only {} compatible images",
            self.inputs.len(),
            self.image_count
        )
    }
}

/// A domination mapping: either a synthesized leaf table or a product
/// applying factor mappings to consecutive input slices.
#[derive(Clone, Debug)]
pub enum DominationMapping {
    Leaf {
        graph: DominationGraph,
        w: usize,
        /// Image of every input, indexed by the input's integer value
        /// (input bit i = integer bit i); images as n-bit masks.
        table: Vec<u64>,
        /// Inverse of `table`.
        inverse: HashMap<u64, u64>,
    },
    Product { factors: Vec<DominationMapping> },
}

/// Serialized form of a mapping.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MappingSchema {
    Leaf {
        groups: Vec<Vec<usize>>,
        w: usize,
        table: Vec<u64>,
    },
    Product { factors: Vec<MappingSchema> },
}

impl DominationMapping {
    pub fn m(&self) -> usize {
        match self {
            DominationMapping::Leaf { graph, .. } => graph.m(),
            DominationMapping::Product { factors } => factors.iter().map(|f| f.m()).sum(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            DominationMapping::Leaf { graph, .. } => graph.n(),
            DominationMapping::Product { factors } => factors.iter().map(|f| f.n()).sum(),
        }
    }

    pub fn w(&self) -> usize {
        match self {
            DominationMapping::Leaf { w, .. } => *w,
            DominationMapping::Product { factors } => factors.iter().map(|f| f.w()).sum(),
        }
    }

    /// Applies the mapping to an m-bit input word.
    pub fn apply(&self, x: &BitWord) -> Result<BitWord> {
        if x.len() != self.m() {
            return Err(Error::param(format!(
                "input length {} does not match m = {}",
                x.len(),
                self.m()
            )));
        }
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &BitWord) -> BitWord {
        match self {
            DominationMapping::Leaf { graph, table, .. } => {
                BitWord::from_u64(graph.n(), table[x.as_u64() as usize])
            }
            DominationMapping::Product { factors } => {
                let mut out = BitWord::zero(self.n());
                let mut in_off = 0;
                let mut out_off = 0;
                for f in factors {
                    let mut slice = BitWord::zero(f.m());
                    for i in 0..f.m() {
                        slice.set(i, x.get(in_off + i));
                    }
                    let img = f.apply_unchecked(&slice);
                    for j in 0..f.n() {
                        if img.get(j) {
                            out.set(out_off + j, true);
                        }
                    }
                    in_off += f.m();
                    out_off += f.n();
                }
                out
            }
        }
    }

    /// The unique preimage of an n-bit word, or None when it is not an image.
    pub fn invert(&self, y: &BitWord) -> Result<Option<BitWord>> {
        if y.len() != self.n() {
            return Err(Error::param(format!(
                "word length {} does not match n = {}",
                y.len(),
                self.n()
            )));
        }
        Ok(self.invert_unchecked(y))
    }

    fn invert_unchecked(&self, y: &BitWord) -> Option<BitWord> {
        match self {
            DominationMapping::Leaf { graph, inverse, .. } => inverse
                .get(&y.as_u64())
                .map(|&x| BitWord::from_u64(graph.m(), x)),
            DominationMapping::Product { factors } => {
                let mut x = BitWord::zero(self.m());
                let mut in_off = 0;
                let mut out_off = 0;
                for f in factors {
                    let mut slice = BitWord::zero(f.n());
                    for j in 0..f.n() {
                        slice.set(j, y.get(out_off + j));
                    }
                    let part = f.invert_unchecked(&slice)?;
                    for i in 0..f.m() {
                        if part.get(i) {
                            x.set(in_off + i, true);
                        }
                    }
                    in_off += f.m();
                    out_off += f.n();
                }
                Some(x)
            }
        }
    }

    /// Owner input coordinates of a set of output wires. The mapped set is
    /// never larger than the argument (each output wire has one owner).
    pub fn owners(&self, wires: &[usize]) -> Result<Vec<usize>> {
        let n = self.n();
        let mut owners = BTreeSet::new();
        for &j in wires {
            if j >= n {
                return Err(Error::param(format!("wire {j} out of range for n = {n}")));
            }
            owners.insert(self.owner_of(j));
        }
        Ok(owners.into_iter().collect())
    }

    fn owner_of(&self, j: usize) -> usize {
        match self {
            DominationMapping::Leaf { graph, .. } => graph.owner(j),
            DominationMapping::Product { factors } => {
                let mut in_off = 0;
                let mut out_off = 0;
                for f in factors {
                    if j < out_off + f.n() {
                        return in_off + f.owner_of(j - out_off);
                    }
                    in_off += f.m();
                    out_off += f.n();
                }
                unreachable!("wire index checked by owners()")
            }
        }
    }

    pub fn to_schema(&self) -> MappingSchema {
        match self {
            DominationMapping::Leaf {
                graph, w, table, ..
            } => MappingSchema::Leaf {
                groups: graph.groups().to_vec(),
                w: *w,
                table: table.clone(),
            },
            DominationMapping::Product { factors } => MappingSchema::Product {
                factors: factors.iter().map(|f| f.to_schema()).collect(),
            },
        }
    }

    pub fn from_schema(schema: &MappingSchema) -> Result<DominationMapping> {
        let mapping = match schema {
            MappingSchema::Leaf { groups, w, table } => {
                let graph = DominationGraph::new(groups.clone())?;
                if table.len() != 1usize << graph.m() {
                    return Err(Error::InvalidFile(format!(
                        "leaf table has {} entries, expected {}",
                        table.len(),
                        1usize << graph.m()
                    )));
                }
                make_leaf(graph, *w, table.clone())?
            }
            MappingSchema::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidFile("empty product mapping".into()));
                }
                DominationMapping::Product {
                    factors: factors
                        .iter()
                        .map(DominationMapping::from_schema)
                        .collect::<Result<_>>()?,
                }
            }
        };
        let report = verify_mapping(&mapping)?;
        if let Some(witness) = report.failure() {
            return Err(Error::InvalidFile(format!(
                "mapping fails verification: {witness}"
            )));
        }
        Ok(mapping)
    }
}

fn make_leaf(graph: DominationGraph, w: usize, table: Vec<u64>) -> Result<DominationMapping> {
    if graph.n() > 64 {
        return Err(Error::param("leaf mappings are limited to n <= 64"));
    }
    let mut inverse = HashMap::with_capacity(table.len());
    for (x, &img) in table.iter().enumerate() {
        inverse.insert(img, x as u64);
    }
    Ok(DominationMapping::Leaf {
        graph,
        w,
        table,
        inverse,
    })
}

/// Exhaustive verification report for a mapping.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MappingReport {
    pub m: usize,
    pub n: usize,
    pub w: usize,
    pub injective: Option<String>,
    pub weight_bounded: Option<String>,
    pub dominating: Option<String>,
    pub inputs_checked: u64,
}

impl MappingReport {
    pub fn passed(&self) -> bool {
        self.failure().is_none()
    }

    pub fn failure(&self) -> Option<&str> {
        self.injective
            .as_deref()
            .or(self.weight_bounded.as_deref())
            .or(self.dominating.as_deref())
    }
}

/// Checks injectivity, the weight bound and domination. Leaves are checked
/// by full enumeration; products are checked factor-wise plus parameter
/// sums, without expanding the product table.
pub fn verify_mapping(mapping: &DominationMapping) -> Result<MappingReport> {
    let mut report = MappingReport {
        m: mapping.m(),
        n: mapping.n(),
        w: mapping.w(),
        injective: None,
        weight_bounded: None,
        dominating: None,
        inputs_checked: 0,
    };
    match mapping {
        DominationMapping::Leaf {
            graph, w, table, ..
        } => {
            if graph.m() > 24 {
                return Err(Error::param("exhaustive verification limited to m <= 24"));
            }
            let mut seen: HashMap<u64, u64> = HashMap::new();
            let group_masks: Vec<u64> = (0..graph.m())
                .map(|i| graph.group_mask(i).as_u64())
                .collect();
            for (x, &img) in table.iter().enumerate() {
                report.inputs_checked += 1;
                if let Some(prev) = seen.insert(img, x as u64) {
                    report.injective.get_or_insert(format!(
                        "inputs {prev} and {x} share image {img:#b}"
                    ));
                }
                if (img.count_ones() as usize) > *w {
                    report.weight_bounded.get_or_insert(format!(
                        "image of input {x} has weight {} > w = {w}",
                        img.count_ones()
                    ));
                }
                for (i, &gmask) in group_masks.iter().enumerate() {
                    if x as u64 >> i & 1 == 0 && img & gmask != 0 {
                        report.dominating.get_or_insert(format!(
                            "input {x} has coordinate {i} off but its image lights group {i}"
                        ));
                    }
                }
            }
        }
        DominationMapping::Product { factors } => {
            for f in factors {
                let sub = verify_mapping(f)?;
                report.inputs_checked += sub.inputs_checked;
                if let Some(msg) = sub.injective {
                    report.injective.get_or_insert(format!("factor: {msg}"));
                }
                if let Some(msg) = sub.weight_bounded {
                    report
                        .weight_bounded
                        .get_or_insert(format!("factor: {msg}"));
                }
                if let Some(msg) = sub.dominating {
                    report.dominating.get_or_insert(format!("factor: {msg}"));
                }
            }
        }
    }
    Ok(report)
}

/// Synthesizes a mapping for the given partition by maximum bipartite
/// matching: input x is compatible with every ball word supported on the
/// union of its switched-on groups. The matching is Hopcroft-Karp with
/// inputs, candidate images and augmentation phases all processed in
/// lexicographic order, so the resulting table is stable across runs.
pub fn synthesize_mapping(graph: &DominationGraph, w: usize) -> Result<DominationMapping> {
    if graph.m() > 14 {
        return Err(Error::param("synthesis limited to m <= 14"));
    }
    if graph.n() > 24 {
        return Err(Error::param("synthesis limited to n <= 24"));
    }
    let m = graph.m();
    let left_count = 1usize << m;
    let union_masks: Vec<u64> = (0..m).map(|i| graph.group_mask(i).as_u64()).collect();

    // right side: every ball word compatible with some input, in ascending
    // mask order (so index order and mask order agree)
    let full_union = union_masks.iter().fold(0u64, |acc, &g| acc | g);
    let rights: Vec<u64> = masked_subsets_up_to_weight(full_union, w);
    let right_index: HashMap<u64, u32> = rights
        .iter()
        .enumerate()
        .map(|(i, &mask)| (mask, i as u32))
        .collect();

    let adjacency: Vec<Vec<u32>> = (0..left_count as u64)
        .map(|x| {
            let allowed = (0..m)
                .filter(|&i| x >> i & 1 == 1)
                .fold(0u64, |acc, i| acc | union_masks[i]);
            masked_subsets_up_to_weight(allowed, w)
                .into_iter()
                .map(|mask| right_index[&mask])
                .collect()
        })
        .collect();

    match hopcroft_karp(&adjacency, rights.len()) {
        Ok(match_of_left) => {
            let table: Vec<u64> = match_of_left
                .into_iter()
                .map(|r| rights[r as usize])
                .collect();
            make_leaf(graph.clone(), w, table)
        }
        // Hall violator: the unmatched input plus the owners of every image
        // reachable from it by alternating paths
        Err(unmatched) => Err(Error::MappingInfeasible {
            witness: hall_witness(&adjacency, rights.len(), unmatched),
        }),
    }
}

/// Subsets of `mask` with at most `w` bits, in ascending integer order.
fn masked_subsets_up_to_weight(mask: u64, w: usize) -> Vec<u64> {
    let coords: Vec<usize> = (0..64).filter(|&j| mask >> j & 1 == 1).collect();
    let mut out = Vec::new();
    for k in 0..=w.min(coords.len()) {
        for subset in crate::bits::Combinations::new(&coords, k) {
            out.push(subset.iter().fold(0u64, |acc, &j| acc | 1 << j));
        }
    }
    out.sort_unstable();
    out
}

const FREE: u32 = u32::MAX;

/// Left-perfect Hopcroft-Karp; returns the right match of every left vertex,
/// or the lexicographically first unmatched left vertex on failure.
fn hopcroft_karp(
    adjacency: &[Vec<u32>],
    right_count: usize,
) -> std::result::Result<Vec<u32>, usize> {
    let left_count = adjacency.len();
    let mut match_l = vec![FREE; left_count];
    let mut match_r = vec![FREE; right_count];
    let mut dist = vec![u32::MAX; left_count];
    let mut queue = std::collections::VecDeque::new();

    loop {
        // BFS layering from free left vertices
        queue.clear();
        for (u, &ml) in match_l.iter().enumerate() {
            if ml == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut layer_found = false;
        while let Some(u) = queue.pop_front() {
            for &r in &adjacency[u] {
                let next = match_r[r as usize];
                if next == FREE {
                    layer_found = true;
                } else if dist[next as usize] == u32::MAX {
                    dist[next as usize] = dist[u] + 1;
                    queue.push_back(next as usize);
                }
            }
        }
        if !layer_found {
            break;
        }
        for u in 0..left_count {
            if match_l[u] == FREE {
                hk_augment(u, adjacency, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
    match (0..left_count).find(|&u| match_l[u] == FREE) {
        None => Ok(match_l),
        Some(unmatched) => Err(unmatched),
    }
}

fn hk_augment(
    u: usize,
    adjacency: &[Vec<u32>],
    match_l: &mut [u32],
    match_r: &mut [u32],
    dist: &mut [u32],
) -> bool {
    for &r in &adjacency[u] {
        let next = match_r[r as usize];
        let reachable = if next == FREE {
            true
        } else if dist[next as usize] == dist[u].wrapping_add(1) {
            hk_augment(next as usize, adjacency, match_l, match_r, dist)
        } else {
            false
        };
        if reachable {
            match_l[u] = r;
            match_r[r as usize] = u as u32;
            return true;
        }
    }
    dist[u] = u32::MAX;
    false
}

/// Alternating-path closure from a left vertex left unmatched by a maximum
/// matching: the reachable inputs outnumber their joint images by one.
fn hall_witness(adjacency: &[Vec<u32>], right_count: usize, unmatched: usize) -> HallWitness {
    let mut match_r: Vec<Option<usize>> = vec![None; right_count];
    for u in 0..adjacency.len() {
        let mut seen = vec![false; right_count];
        kuhn_augment(u, adjacency, &mut match_r, &mut seen);
    }
    let mut seen = vec![false; right_count];
    kuhn_augment(unmatched, adjacency, &mut match_r, &mut seen);
    let mut inputs: BTreeSet<u64> = BTreeSet::new();
    inputs.insert(unmatched as u64);
    let mut image_count = 0;
    for r in 0..right_count {
        if seen[r] {
            image_count += 1;
            if let Some(holder) = match_r[r] {
                inputs.insert(holder as u64);
            }
        }
    }
    HallWitness {
        inputs: inputs.into_iter().collect(),
        image_count,
    }
}

fn kuhn_augment(
    u: usize,
    adjacency: &[Vec<u32>],
    match_r: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &r in &adjacency[u] {
        let r = r as usize;
        if !seen[r] {
            seen[r] = true;
            let free = match match_r[r] {
                None => true,
                Some(holder) => kuhn_augment(holder, adjacency, match_r, seen),
            };
            if free {
                match_r[r] = Some(u);
                return true;
            }
        }
    }
    false
}

/// Balanced-first candidate partitions of n coordinates into m groups, used
/// when only (m, n, w) is given. The list starts with the balanced partition
/// (larger cells first), then the balanced partition with smaller cells
/// first, then variants that move one coordinate at a time from the last
/// cell into the first. The chosen partition is recorded in the mapping's
/// serialized form.
pub fn candidate_partitions(m: usize, n: usize) -> Vec<Vec<Vec<usize>>> {
    if m == 0 || n < m {
        return Vec::new();
    }
    let sizes_desc: Vec<usize> = {
        let base = n / m;
        let extra = n % m;
        (0..m)
            .map(|i| if i < extra { base + 1 } else { base })
            .collect()
    };
    let mut sizes_asc = sizes_desc.clone();
    sizes_asc.reverse();

    let contiguous = |sizes: &[usize]| -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for &s in sizes {
            out.push((next..next + s).collect());
            next += s;
        }
        out
    };

    let mut seen = HashSet::new();
    let mut result = Vec::new();
    let mut push = |sizes: &[usize]| {
        if sizes.iter().all(|&s| s > 0) && seen.insert(sizes.to_vec()) {
            result.push(contiguous(sizes));
        }
    };
    push(&sizes_desc);
    push(&sizes_asc);
    let mut skew = sizes_desc.clone();
    for _ in 0..6 {
        if skew[m - 1] <= 1 {
            break;
        }
        skew[m - 1] -= 1;
        skew[0] += 1;
        push(&skew);
    }
    result
}

/// Synthesizes an (m, n, w) mapping by trying [`candidate_partitions`] in
/// order. On total failure the error reports the Hall witness of every
/// candidate tried.
pub fn synthesize_auto(m: usize, n: usize, w: usize) -> Result<(DominationMapping, Vec<Vec<usize>>)> {
    let partitions = candidate_partitions(m, n);
    if partitions.is_empty() {
        return Err(Error::param(format!(
            "no partition of {n} coordinates into {m} nonempty groups"
        )));
    }
    let mut failures = Vec::new();
    for groups in partitions {
        let graph = DominationGraph::new(groups.clone())?;
        match synthesize_mapping(&graph, w) {
            Ok(mapping) => return Ok((mapping, groups)),
            Err(Error::MappingInfeasible { witness }) => {
                failures.push(format!("partition {groups:?}: {witness}"));
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::param(format!(
        "all candidate partitions failed Hall's condition: {}",
        failures.join("; ")
    )))
}

/// Product of mappings, applied to consecutive input slices.
pub fn product(factors: Vec<DominationMapping>) -> Result<DominationMapping> {
    if factors.is_empty() {
        return Err(Error::param("product of zero mappings"));
    }
    Ok(DominationMapping::Product { factors })
}

/// Pushes a cooling code through a mapping, giving a generator-backed
/// low-power cooling code: codeset i is the image of cooling codeset i.
pub fn lpc_from_cooling(cooling: CoolingCode, mapping: DominationMapping) -> Result<LpcCode> {
    let descriptor = GeneratorDescriptor::LpcFromCooling {
        cooling: SpreadParams {
            n: cooling.n(),
            t: cooling.t(),
        },
        mapping: mapping.to_schema(),
    };
    lpc_from_cooling_with_descriptor(cooling, mapping, descriptor)
}

/// Same pipeline with a caller-supplied persistence descriptor (used by the
/// 5w-wire pipeline so its files round-trip under their own name).
pub(crate) fn lpc_from_cooling_with_descriptor(
    cooling: CoolingCode,
    mapping: DominationMapping,
    descriptor: GeneratorDescriptor,
) -> Result<LpcCode> {
    if mapping.m() != cooling.n() {
        return Err(Error::param(format!(
            "mapping input length {} does not match cooling code length {}",
            mapping.m(),
            cooling.n()
        )));
    }
    let (n, t, w) = (mapping.n(), cooling.t(), mapping.w());
    let provider = Arc::new(MappedCooling { cooling, mapping });
    LpcCode::new_generator(n, t, w, crate::model::CodeKind::Lpc, descriptor, provider)
}

struct MappedCooling {
    cooling: CoolingCode,
    mapping: DominationMapping,
}

impl CodesetProvider for MappedCooling {
    fn num_codesets(&self) -> u128 {
        self.cooling.num_codesets()
    }

    fn materialize(&self, index: u128) -> crate::error::Result<Codeset> {
        let inner = self.cooling.codeset(index)?;
        let words = inner
            .codewords
            .iter()
            .map(|cw| {
                let img = self.mapping.apply(&cw.to_mask())?;
                Codeword::new(self.mapping.n(), img.support())
            })
            .collect::<Result<Vec<_>>>()?;
        Codeset::new(words)
    }

    fn encode(&self, index: u128, hot: &HotSet) -> crate::error::Result<Codeword> {
        // hot output wires pull back to at most |hot| input positions
        let owners = self.mapping.owners(hot.wires())?;
        debug_assert!(owners.len() <= hot.len());
        let inner_hot = HotSet::new(self.cooling.n(), owners)?;
        let word = self.cooling.encode(index, &inner_hot)?;
        let img = self.mapping.apply(&word.to_mask())?;
        let out = Codeword::new(self.mapping.n(), img.support())?;
        debug_assert!(out.avoids(hot));
        Ok(out)
    }

    fn decode(&self, received: &Codeword) -> crate::error::Result<u128> {
        let x = self
            .mapping
            .invert(&received.to_mask())?
            .ok_or_else(|| Error::MalformedCodeword("word is not a mapping image".into()))?;
        let inner = Codeword::new(self.cooling.n(), x.support())?;
        self.cooling.decode(&inner)
    }
}
