//! Best-improvement hill climbing and the exhaustive basin partition.
//!
//! Every configuration is mapped to the local optimum its best-improvement
//! climb ends at. The climb only moves on strict improvement and breaks
//! exact ties between best neighbors by the smallest flipped bit, so the map
//! is total and deterministic even on hand-built tables with plateaus.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::landscape::{Configuration, Fitness, Landscape};
use crate::numfmt::g17;

/// Largest `n` the exhaustive pipeline accepts unless overridden.
pub const DEFAULT_EXHAUSTIVE_CAP: u32 = 24;

const UNASSIGNED: u32 = u32::MAX;

/// A local optimum and the size of its basin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Optimum {
    pub id: u32,
    pub config: Configuration,
    pub fitness: Fitness,
    pub basin_size: u64,
}

/// Total map from configurations to optimum ids.
///
/// Optimum ids follow ascending optimum configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct BasinMap {
    n: u32,
    assignment: Vec<u32>,
    optima: Vec<Optimum>,
}

impl BasinMap {
    #[cfg(test)]
    pub(crate) fn from_parts(n: u32, assignment: Vec<u32>, optima: Vec<Optimum>) -> Self {
        BasinMap {
            n,
            assignment,
            optima,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `assignment()[s]` is the id of the optimum whose basin contains `s`.
    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn optima(&self) -> &[Optimum] {
        &self.optima
    }

    pub fn optimum_count(&self) -> usize {
        self.optima.len()
    }

    pub fn optimum_of(&self, config: Configuration) -> &Optimum {
        &self.optima[self.assignment[config as usize] as usize]
    }

    pub fn basin_sizes(&self) -> impl Iterator<Item = u64> + '_ {
        self.optima.iter().map(|o| o.basin_size)
    }

    /// Fittest optimum; exact ties go to the smaller configuration.
    pub fn global_optimum(&self) -> &Optimum {
        let mut best = &self.optima[0];
        for o in &self.optima[1..] {
            if o.fitness > best.fitness {
                best = o;
            }
        }
        best
    }

    /// Writes `nodes.csv`. `degrees` comes from the LON; without it the
    /// degree column is `-1`.
    pub fn write_nodes_csv<W: Write>(&self, mut w: W, degrees: Option<&[usize]>) -> Result<()> {
        writeln!(w, "id,config,fitness,basin_size,degree")?;
        for o in &self.optima {
            let degree = degrees.map_or(-1, |d| d[o.id as usize] as i64);
            writeln!(
                w,
                "{},{},{},{},{}",
                o.id,
                o.config,
                g17(o.fitness),
                o.basin_size,
                degree
            )?;
        }
        Ok(())
    }
}

/// Same as [`BasinMap::global_optimum`].
pub fn global_optimum(basins: &BasinMap) -> &Optimum {
    basins.global_optimum()
}

/// Best-improvement successor of `s` over a precomputed fitness table, or
/// `s` itself when no neighbor is strictly fitter.
#[inline]
fn best_move(fitness: &[Fitness], n: u32, s: Configuration) -> Configuration {
    let mut best = s ^ 1;
    let mut best_f = fitness[best as usize];
    for i in 1..n {
        let t = s ^ (1 << i);
        let f = fitness[t as usize];
        if f > best_f {
            best = t;
            best_f = f;
        }
    }
    if fitness[s as usize] < best_f {
        best
    } else {
        s
    }
}

/// Runs best-improvement local search from `start` until no neighbor is
/// strictly fitter and returns the optimum reached.
pub fn local_search(landscape: &Landscape, start: Configuration) -> Configuration {
    let n = landscape.n();
    let mut s = start;
    let mut f_s = landscape.fitness(s);
    loop {
        let mut best = s ^ 1;
        let mut best_f = landscape.fitness(best);
        for i in 1..n {
            let t = s ^ (1 << i);
            let f = landscape.fitness(t);
            if f > best_f {
                best = t;
                best_f = f;
            }
        }
        if f_s < best_f {
            s = best;
            f_s = best_f;
        } else {
            return s;
        }
    }
}

/// Partitions the whole search space into basins, with the default cap.
pub fn compute_basins(landscape: &Landscape) -> Result<BasinMap> {
    compute_basins_capped(landscape, DEFAULT_EXHAUSTIVE_CAP)
}

/// Partitions the whole search space into basins, refusing `n > cap`.
pub fn compute_basins_capped(landscape: &Landscape, cap: u32) -> Result<BasinMap> {
    let n = landscape.n();
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    let fitness = landscape.fitness_table();
    Ok(basins_from_fitness(&fitness, n))
}

/// Builds the basin map from a full fitness table (`fitness.len() == 2^n`).
pub fn basins_from_fitness(fitness: &[Fitness], n: u32) -> BasinMap {
    let size = fitness.len();
    assert_eq!(size, 1usize << n, "fitness table must cover 2^n configurations");

    let mut next = vec![0 as Configuration; size];
    next.par_chunks_mut(4096)
        .enumerate()
        .for_each(|(chunk, slots)| {
            let base = (chunk * 4096) as u32;
            for (offset, slot) in slots.iter_mut().enumerate() {
                let s = base + offset as u32;
                *slot = if n == 0 { s } else { best_move(fitness, n, s) };
            }
        });

    let mut assignment = vec![UNASSIGNED; size];
    let mut optima = Vec::new();
    for (s, &t) in next.iter().enumerate() {
        if t as usize == s {
            let id = optima.len() as u32;
            assignment[s] = id;
            optima.push(Optimum {
                id,
                config: s as Configuration,
                fitness: fitness[s],
                basin_size: 0,
            });
        }
    }

    // Every configuration on a climb path shares the path's endpoint.
    let mut path = Vec::new();
    for s in 0..size {
        let mut cur = s;
        while assignment[cur] == UNASSIGNED {
            path.push(cur);
            cur = next[cur] as usize;
        }
        let id = assignment[cur];
        for p in path.drain(..) {
            assignment[p] = id;
        }
    }

    for &id in &assignment {
        optima[id as usize].basin_size += 1;
    }

    BasinMap {
        n,
        assignment,
        optima,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{make_landscape, neighbors};
    use crate::oracle;

    #[test]
    fn optimum_start_is_returned_unchanged() {
        let l = make_landscape(10, 4, 2).unwrap();
        let b = compute_basins(&l).unwrap();
        for o in b.optima() {
            assert_eq!(local_search(&l, o.config), o.config);
        }
    }

    #[test]
    fn separable_landscape_has_one_optimum() {
        for seed in 0..5 {
            let l = make_landscape(9, 0, seed).unwrap();
            let expected: u32 = (0..9)
                .filter(|&g| l.contribution(g, 1) > l.contribution(g, 0))
                .map(|g| 1 << g)
                .sum();
            for s in [0u32, 1, 77, 511] {
                assert_eq!(local_search(&l, s), expected);
            }
            let b = compute_basins(&l).unwrap();
            assert_eq!(b.optimum_count(), 1);
            assert_eq!(b.optima()[0].basin_size, 512);
            assert_eq!(b.optima()[0].config, expected);
            assert_eq!(b.global_optimum().config, expected);
        }
    }

    #[test]
    fn matches_exhaustive_oracle_n6() {
        let l = make_landscape(6, 2, 3).unwrap();
        let ends = oracle::naive_basin_endpoints(&l);
        for s in 0..64u32 {
            assert_eq!(local_search(&l, s), ends[s as usize]);
        }
        let b = compute_basins(&l).unwrap();
        let argmax = (0..64u32)
            .max_by(|&a, &c| l.fitness(a).partial_cmp(&l.fitness(c)).unwrap())
            .unwrap();
        assert_eq!(b.global_optimum().config, argmax);
        // From the standalone reference: optima {51, 60}, global 60.
        let configs: Vec<_> = b.optima().iter().map(|o| o.config).collect();
        assert_eq!(configs, vec![51, 60]);
        assert_eq!(argmax, 60);
    }

    #[test]
    fn oracle_equivalence_small_n() {
        for n in 1..=8 {
            for k in 0..n {
                for seed in 0..5 {
                    let l = make_landscape(n, k, seed).unwrap();
                    let b = compute_basins(&l).unwrap();
                    let ends = oracle::naive_basin_endpoints(&l);
                    for (s, &end) in ends.iter().enumerate() {
                        assert_eq!(b.optimum_of(s as u32).config, end, "n={n} k={k} seed={seed} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn basin_map_invariants() {
        let l = make_landscape(12, 5, 9).unwrap();
        let b = compute_basins(&l).unwrap();
        assert_eq!(b.basin_sizes().sum::<u64>(), 4096);
        let mut prev = None;
        for o in b.optima() {
            assert_eq!(b.assignment()[o.config as usize], o.id);
            assert!(neighbors(o.config, 12).all(|t| l.fitness(t) < o.fitness));
            assert!(prev.is_none_or(|p| p < o.config));
            prev = Some(o.config);
        }
    }

    #[test]
    fn climb_properties() {
        let l = make_landscape(11, 6, 4).unwrap();
        let b = compute_basins(&l).unwrap();
        for s in 0..2048u32 {
            let end = local_search(&l, s);
            assert_eq!(local_search(&l, end), end);
            assert!(l.fitness(end) >= l.fitness(s));
            let is_opt = b.optima().iter().any(|o| o.config == s);
            assert_eq!(l.fitness(end) == l.fitness(s), is_opt);
            // Path consistency: the first move lands in the same basin.
            let f = l.fitness_table();
            let first = best_move(&f, 11, s);
            assert_eq!(local_search(&l, first), end);
        }
    }

    #[test]
    fn plateau_stops_and_ties_take_lowest_bit() {
        // Gene 0 and gene 1 are independent; all contributions equal except
        // gene 2, which prefers 1. From 000 the best neighbor is 100.
        let rows = vec![vec![0.5, 0.5], vec![0.5, 0.5], vec![0.2, 0.8]];
        let l = Landscape::from_tables(3, 0, 0, &rows).unwrap();
        assert_eq!(local_search(&l, 0b000), 0b100);
        // 100 has equal-fitness neighbors 101 and 110: no strict improvement.
        assert_eq!(local_search(&l, 0b100), 0b100);

        // Two improving neighbors with identical fitness: bit 0 wins.
        let rows = vec![vec![0.1, 0.9], vec![0.1, 0.9]];
        let l = Landscape::from_tables(2, 0, 0, &rows).unwrap();
        let f = l.fitness_table();
        assert_eq!(best_move(&f, 2, 0b00), 0b01);
        assert_eq!(local_search(&l, 0b00), 0b11);
    }

    #[test]
    fn capacity_guard() {
        let l = make_landscape(12, 1, 0).unwrap();
        assert!(matches!(
            compute_basins_capped(&l, 10),
            Err(Error::Capacity { n: 12, cap: 10 })
        ));
    }

    #[test]
    fn independent_of_thread_count() {
        let l = make_landscape(14, 6, 21).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| compute_basins(&l).unwrap());
        let b = four.install(|| compute_basins(&l).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn nodes_csv_before_lon() {
        let l = make_landscape(6, 2, 3).unwrap();
        let b = compute_basins(&l).unwrap();
        let mut out = Vec::new();
        b.write_nodes_csv(&mut out, None).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "id,config,fitness,basin_size,degree\n\
             0,51,0.74968431561796756,30,-1\n\
             1,60,0.84956524325882199,34,-1\n"
        );
    }
}
