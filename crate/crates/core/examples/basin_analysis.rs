//! Regression fits relating degree, basin size and fitness of optima.

use lonlab::analyze_seeded;

fn main() -> lonlab::Result<()> {
    let a = analyze_seeded(16, 8, 2, 24)?;
    let r = &a.report.basins;
    println!("n=16 k=8: {} optima", a.basins.optimum_count());
    println!("global optimum basin: {:.5} of the space", r.global_opt_relative_size);

    let fits = [
        ("ln P(deg >= k) ~ k", &r.degree_distribution_fit),
        ("ln #(size >= s) ~ s", &r.size_distribution_fit),
        ("ln size ~ fitness", &r.fitness_size_fit),
        ("degree ~ size", &r.degree_size_fit),
    ];
    for (label, fit) in fits {
        match fit {
            Some(f) => println!(
                "  {label:<22} rho {:>8}  alpha {:>10.4}  beta {:>10.5}  ({} points)",
                f.rho.map_or("-".into(), |x| format!("{x:.4}")),
                f.alpha,
                f.beta,
                f.point_count
            ),
            None => println!("  {label:<22} undefined"),
        }
    }
    Ok(())
}
