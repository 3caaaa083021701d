//! Best-improvement climbs from a handful of starting points.

use lonlab::landscape::neighbors;
use lonlab::{local_search, Landscape};

fn main() -> lonlab::Result<()> {
    let n = 10;
    let landscape = Landscape::new(n, 4, 3)?;

    for start in [0u32, 0b1010101010, 0b1111100000, 1023] {
        let mut path = vec![start];
        let mut s = start;
        loop {
            // steepest strictly-improving neighbor, lowest bit on ties
            let best = neighbors(s, n)
                .fold(s, |b, t| if landscape.fitness(t) > landscape.fitness(b) { t } else { b });
            if best == s {
                break;
            }
            path.push(best);
            s = best;
        }
        assert_eq!(s, local_search(&landscape, start));
        let steps: Vec<String> = path
            .iter()
            .map(|c| format!("{c:010b} ({:.4})", landscape.fitness(*c)))
            .collect();
        println!("{}", steps.join(" -> "));
    }
    Ok(())
}
