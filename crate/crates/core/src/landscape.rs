//! NK landscapes under the adjacent neighborhood model.
//!
//! A landscape over `n` binary genes assigns every gene a contribution table
//! with `2^(k+1)` entries, indexed by the values of the gene itself and its
//! `k` successors on the ring. Fitness is the mean contribution.
//!
//! Tables are generated from a counter-based splitmix64 hash of
//! `(seed, gene, context)`, so an instance is fully determined by
//! `(n, k, seed)` and can be regenerated bit-for-bit in any language.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the search space: bit `i` (LSB = gene 0) is the value of gene `i`.
pub type Configuration = u32;

/// Landscape height at a configuration, in `[0, 1)`.
pub type Fitness = f64;

/// Widest configuration representable by [`Configuration`].
pub const MAX_GENES: u32 = 32;

/// Largest `k` accepted; keeps a single contribution table under 2^25 entries.
pub const MAX_EPISTASIS: u32 = 24;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const GENE_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;
const CONTEXT_STRIDE: u64 = 0xC2B2_AE3D_27D4_EB4F;

/// The splitmix64 output function applied to a single counter value.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps the top 53 bits of a hash to a real in `[0, 1)`.
pub fn unit_interval(h: u64) -> f64 {
    (h >> 11) as f64 / (1u64 << 53) as f64
}

/// Contribution of `gene` under context `ctx` for an instance seeded with `seed`.
pub fn table_entry(seed: u64, gene: u32, ctx: u32) -> f64 {
    let counter = (gene as u64)
        .wrapping_mul(GENE_STRIDE)
        .wrapping_add((ctx as u64).wrapping_mul(CONTEXT_STRIDE));
    unit_interval(splitmix64(seed ^ counter))
}

/// How each gene's `k` interacting genes are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NeighborhoodModel {
    /// The `k` ring successors of the gene.
    #[serde(rename = "nk-adjacent")]
    Adjacent,
    /// Uniformly random interaction partners. Not implemented.
    #[serde(rename = "nk-random")]
    Random,
}

impl NeighborhoodModel {
    pub fn as_str(self) -> &'static str {
        match self {
            NeighborhoodModel::Adjacent => "nk-adjacent",
            NeighborhoodModel::Random => "nk-random",
        }
    }
}

/// An immutable NK landscape instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Landscape {
    n: u32,
    k: u32,
    model: NeighborhoodModel,
    seed: u64,
    /// Row-major, `n` rows of `2^(k+1)` entries.
    tables: Vec<f64>,
}

fn check_params(n: u32, k: u32) -> Result<()> {
    if n == 0 || n > MAX_GENES {
        return Err(Error::InvalidParameters(format!(
            "n must be in 1..={MAX_GENES}, got {n}"
        )));
    }
    if k >= n {
        return Err(Error::InvalidParameters(format!(
            "k must be in 0..={}, got {k}",
            n - 1
        )));
    }
    if k > MAX_EPISTASIS {
        return Err(Error::InvalidParameters(format!(
            "k above {MAX_EPISTASIS} is not supported, got {k}"
        )));
    }
    Ok(())
}

/// Builds the seeded adjacent-model landscape for `(n, k, seed)`.
pub fn make_landscape(n: u32, k: u32, seed: u64) -> Result<Landscape> {
    Landscape::with_model(n, k, NeighborhoodModel::Adjacent, seed)
}

impl Landscape {
    pub fn new(n: u32, k: u32, seed: u64) -> Result<Self> {
        make_landscape(n, k, seed)
    }

    pub fn with_model(n: u32, k: u32, model: NeighborhoodModel, seed: u64) -> Result<Self> {
        check_params(n, k)?;
        if model != NeighborhoodModel::Adjacent {
            return Err(Error::UnsupportedModel(model.as_str().to_owned()));
        }
        let width = 1u32 << (k + 1);
        let tables = (0..n)
            .flat_map(|gene| (0..width).map(move |ctx| table_entry(seed, gene, ctx)))
            .collect();
        Ok(Landscape {
            n,
            k,
            model,
            seed,
            tables,
        })
    }

    /// Builds a landscape from explicit contribution tables (one row per gene).
    ///
    /// Used for hand-made fixtures; `seed` is carried along but not used.
    pub fn from_tables(n: u32, k: u32, seed: u64, rows: &[Vec<f64>]) -> Result<Self> {
        check_params(n, k)?;
        let width = 1usize << (k + 1);
        if rows.len() != n as usize {
            return Err(Error::InvalidParameters(format!(
                "expected {n} table rows, got {}",
                rows.len()
            )));
        }
        let mut tables = Vec::with_capacity(n as usize * width);
        for (gene, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::InvalidParameters(format!(
                    "table row {gene} has {} entries, expected {width}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|v| !(0.0..1.0).contains(*v)) {
                return Err(Error::InvalidParameters(format!(
                    "table row {gene} has entry {bad} outside [0, 1)"
                )));
            }
            tables.extend_from_slice(row);
        }
        Ok(Landscape {
            n,
            k,
            model: NeighborhoodModel::Adjacent,
            seed,
            tables,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn model(&self) -> NeighborhoodModel {
        self.model
    }

    /// Number of configurations, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Flat row-major contribution tables.
    pub fn tables(&self) -> &[f64] {
        &self.tables
    }

    pub fn table_width(&self) -> usize {
        1usize << (self.k + 1)
    }

    pub fn contribution(&self, gene: u32, ctx: u32) -> f64 {
        self.tables[gene as usize * self.table_width() + ctx as usize]
    }

    /// Bit 0 is `s_gene`, bit `m` is `s_{(gene + m) mod n}` for `1 <= m <= k`.
    #[inline]
    pub fn context_index(&self, config: Configuration, gene: u32) -> u32 {
        debug_assert!(gene < self.n);
        let s = config as u64;
        let rotated = (s >> gene) | (s << (self.n - gene));
        (rotated & ((1u64 << (self.k + 1)) - 1)) as u32
    }

    /// Mean gene contribution, summed in gene order.
    #[inline]
    pub fn fitness(&self, config: Configuration) -> Fitness {
        debug_assert!((config as u64) < (1u64 << self.n));
        let width = self.table_width();
        let mut total = 0.0;
        for gene in 0..self.n {
            let ctx = self.context_index(config, gene) as usize;
            total += self.tables[gene as usize * width + ctx];
        }
        total / self.n as f64
    }

    /// Fitness of every configuration, indexed by configuration.
    pub fn fitness_table(&self) -> Vec<Fitness> {
        let mut out = vec![0.0; self.size()];
        out.par_chunks_mut(4096)
            .enumerate()
            .for_each(|(chunk, slots)| {
                let base = (chunk * 4096) as u32;
                for (offset, slot) in slots.iter_mut().enumerate() {
                    *slot = self.fitness(base + offset as u32);
                }
            });
        out
    }

    pub fn descriptor(&self) -> LandscapeDescriptor {
        LandscapeDescriptor {
            model: self.model,
            n: self.n,
            k: self.k,
            seed: self.seed,
            tables: None,
        }
    }

    pub fn save_json(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer(&mut w, &self.descriptor())?;
        w.write_all(b"\n")?;
        w.flush()?;
        Ok(())
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        let desc: LandscapeDescriptor = serde_json::from_reader(BufReader::new(File::open(path)?))?;
        desc.build()
    }
}

/// Same as [`Landscape::context_index`].
pub fn context_index(landscape: &Landscape, config: Configuration, gene: u32) -> u32 {
    landscape.context_index(config, gene)
}

/// Same as [`Landscape::fitness`].
pub fn eval_fitness(landscape: &Landscape, config: Configuration) -> Fitness {
    landscape.fitness(config)
}

/// The `n` one-bit-flip neighbors of `config`, in ascending flipped-bit order.
pub fn neighbors(config: Configuration, n: u32) -> impl Iterator<Item = Configuration> {
    (0..n).map(move |i| config ^ (1 << i))
}

/// All Hamming-1 pairs `(s, t)`, `s < t`, with exactly equal fitness.
///
/// NK landscapes with continuous tables are expected to have none; callers
/// report any hit rather than relying on tie-breaking.
pub fn find_neutral_pairs(fitness: &[Fitness], n: u32) -> Vec<(Configuration, Configuration)> {
    let mut pairs = Vec::new();
    for s in 0..fitness.len() as u32 {
        for t in neighbors(s, n) {
            if t > s && fitness[s as usize] == fitness[t as usize] {
                pairs.push((s, t));
            }
        }
    }
    pairs
}

/// On-disk landscape description. Tables are normally regenerated from the
/// seed; an explicit `tables` array overrides them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandscapeDescriptor {
    pub model: NeighborhoodModel,
    pub n: u32,
    pub k: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<Vec<Vec<f64>>>,
}

impl LandscapeDescriptor {
    pub fn build(&self) -> Result<Landscape> {
        match &self.tables {
            Some(rows) => {
                if self.model != NeighborhoodModel::Adjacent {
                    return Err(Error::UnsupportedModel(self.model.as_str().to_owned()));
                }
                Landscape::from_tables(self.n, self.k, self.seed, rows)
            }
            None => Landscape::with_model(self.n, self.k, self.model, self.seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Frozen from the standalone Python reference (tests/fixtures/reference.py).
    const ENTRY_SEED42_G0_C0: f64 = 0.7415648787718233;
    const SEED1_CTX0: [f64; 6] = [
        0.5665615751722809,
        0.9125972035944532,
        0.9710027535867962,
        0.4262344494451664,
        0.44426470082635805,
        0.8246716106407089,
    ];
    const SEED1_N6K2_F0: f64 = 0.6908887155442941;

    #[test]
    fn table_sizes() {
        assert_eq!(make_landscape(1, 0, 99).unwrap().tables().len(), 2);
        assert_eq!(make_landscape(16, 15, 7).unwrap().tables().len(), 1_048_576);
        let l = make_landscape(1, 0, 5).unwrap();
        assert!(l.tables().iter().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn golden_splitmix_entry() {
        let l = make_landscape(4, 1, 42).unwrap();
        assert_eq!(l.contribution(0, 0), ENTRY_SEED42_G0_C0);
    }

    #[test]
    fn golden_fitness_at_zero() {
        let l = make_landscape(6, 2, 1).unwrap();
        for (gene, &expected) in SEED1_CTX0.iter().enumerate() {
            assert_eq!(l.contribution(gene as u32, 0), expected);
        }
        let manual = SEED1_CTX0.iter().sum::<f64>() / 6.0;
        assert_eq!(l.fitness(0), manual);
        assert_eq!(l.fitness(0), SEED1_N6K2_F0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(make_landscape(0, 0, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(make_landscape(16, 16, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(make_landscape(4, 9, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(
            Landscape::with_model(8, 2, NeighborhoodModel::Random, 1),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn context_index_examples() {
        let l = make_landscape(4, 0, 0).unwrap();
        assert_eq!(l.context_index(0b1010, 1), 1);
        let l = make_landscape(4, 2, 0).unwrap();
        assert_eq!(l.context_index(0b0110, 3), 4);
        let l = make_landscape(4, 3, 0).unwrap();
        assert_eq!(l.context_index(0b1111, 0), 15);
    }

    #[test]
    fn context_index_full_width() {
        let l = make_landscape(32, 3, 0).unwrap();
        // s_31 = 1, s_0 = 1, s_1 = 0, s_2 = 1
        assert_eq!(l.context_index(0x8000_0005, 31), 0b1011);
    }

    #[test]
    fn injected_two_gene_fitness() {
        let l = Landscape::from_tables(2, 0, 0, &[vec![0.1, 0.9], vec![0.3, 0.5]]).unwrap();
        assert_eq!(l.fitness(0b10), (0.1 + 0.5) / 2.0);
    }

    #[test]
    fn injected_tables_are_validated() {
        assert!(Landscape::from_tables(2, 0, 0, &[vec![0.1, 0.9]]).is_err());
        assert!(Landscape::from_tables(2, 0, 0, &[vec![0.1, 0.9], vec![0.3]]).is_err());
        assert!(Landscape::from_tables(2, 0, 0, &[vec![0.1, 1.0], vec![0.3, 0.5]]).is_err());
    }

    #[test]
    fn constant_tables_give_constant_fitness() {
        let c = 0.375;
        let rows = vec![vec![c; 8]; 5];
        let l = Landscape::from_tables(5, 2, 0, &rows).unwrap();
        assert!(l.fitness_table().iter().all(|&f| f == c));
    }

    #[test]
    fn neighbor_order() {
        assert_eq!(neighbors(0b000, 3).collect::<Vec<_>>(), vec![0b001, 0b010, 0b100]);
        assert_eq!(neighbors(0b111, 3).collect::<Vec<_>>(), vec![0b110, 0b101, 0b011]);
    }

    #[test]
    fn descriptor_round_trip() {
        let l = make_landscape(16, 2, 1).unwrap();
        let json = serde_json::to_string(&l.descriptor()).unwrap();
        assert_eq!(json, r#"{"model":"nk-adjacent","n":16,"k":2,"seed":1}"#);
        let back: LandscapeDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), l);
    }

    #[test]
    fn descriptor_with_tables() {
        let json = r#"{"model":"nk-adjacent","n":2,"k":0,"tables":[[0.1,0.9],[0.3,0.5]]}"#;
        let desc: LandscapeDescriptor = serde_json::from_str(json).unwrap();
        let l = desc.build().unwrap();
        assert_eq!(l.fitness(0b10), 0.3);
    }

    #[test]
    fn no_neutral_pairs_on_seeded_instances() {
        for (n, k) in [(8, 0), (10, 3), (12, 7), (16, 2), (16, 15)] {
            for seed in 0..3 {
                let l = make_landscape(n, k, seed).unwrap();
                let f = l.fitness_table();
                let pairs = find_neutral_pairs(&f, n);
                assert!(pairs.is_empty(), "neutral pairs at n={n} k={k} seed={seed}: {pairs:?}");
            }
        }
    }

    #[test]
    fn fitness_table_matches_pointwise() {
        let l = make_landscape(10, 4, 11).unwrap();
        let table = l.fitness_table();
        for s in 0..1024u32 {
            assert_eq!(table[s as usize].to_bits(), l.fitness(s).to_bits());
        }
    }

    proptest! {
        #[test]
        fn construction_is_deterministic(n in 1u32..10, k_frac in 0.0f64..1.0, seed: u64) {
            let k = ((n as f64) * k_frac) as u32 % n;
            let a = make_landscape(n, k, seed).unwrap();
            let b = make_landscape(n, k, seed).unwrap();
            prop_assert!(a.tables().iter().zip(b.tables()).all(|(x, y)| x.to_bits() == y.to_bits()));
            prop_assert!(a.tables().iter().all(|v| (0.0..1.0).contains(v)));
        }

        #[test]
        fn neighborhood_is_symmetric(n in 1u32..20, raw: u32) {
            let s = raw & ((1u64 << n) - 1) as u32;
            let ns: Vec<_> = neighbors(s, n).collect();
            prop_assert_eq!(ns.len(), n as usize);
            for &t in &ns {
                prop_assert_eq!((s ^ t).count_ones(), 1);
                prop_assert!(neighbors(t, n).any(|u| u == s));
            }
            let mut sorted = ns.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), n as usize);
        }

        #[test]
        fn epistasis_is_local(n in 2u32..14, k_frac in 0.0f64..1.0, seed: u64, raw: u32, j_raw: u32) {
            let k = ((n as f64) * k_frac) as u32 % n;
            let l = make_landscape(n, k, seed).unwrap();
            let s = raw & ((1u64 << n) - 1) as u32;
            let j = j_raw % n;
            let t = s ^ (1 << j);
            // Genes whose window {i, ..., i+k} mod n contains j.
            let touched: Vec<u32> = (0..n).filter(|&i| (j + n - i) % n <= k).collect();
            let delta: f64 = touched
                .iter()
                .map(|&i| l.contribution(i, l.context_index(t, i)) - l.contribution(i, l.context_index(s, i)))
                .sum::<f64>() / n as f64;
            let full = l.fitness(t) - l.fitness(s);
            prop_assert!((delta - full).abs() < 1e-12);
            for i in (0..n).filter(|i| !touched.contains(i)) {
                prop_assert_eq!(l.context_index(s, i), l.context_index(t, i));
            }
        }
    }
}
