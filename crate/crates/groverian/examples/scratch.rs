use groverian::grover::validate_overlap_law;
use groverian::measure::w_table;
use groverian::optimizer::{optimize, OptimizerConfig};
use groverian::partition::Partition;
use groverian::state::{make_eta, make_w, MarkedElement};

fn main() {
    // Grover deviations and slope.
    let mut points = Vec::new();
    for n in [6usize, 8, 10] {
        let eta = make_eta(n).unwrap();
        let report = validate_overlap_law(&eta, MarkedElement { index: 0 }, 100, 0).unwrap();
        println!(
            "n={n}: max_dev={:.6e} fitted_c={:.4}",
            report.max_deviation, report.fitted_c
        );
        points.push((((1usize << n) as f64).ln(), report.max_deviation.ln()));
    }
    let xm = points.iter().map(|p| p.0).sum::<f64>() / 3.0;
    let ym = points.iter().map(|p| p.1).sum::<f64>() / 3.0;
    let slope = points
        .iter()
        .map(|(x, y)| (x - xm) * (y - ym))
        .sum::<f64>()
        / points.iter().map(|(x, _)| (x - xm) * (x - xm)).sum::<f64>();
    println!("slope = {slope:.4}");

    let eta8 = make_eta(8).unwrap();
    let r = validate_overlap_law(&eta8, MarkedElement { index: 0 }, 50, 0).unwrap();
    println!("n=8 trials=50: max_dev={:.6}", r.max_deviation);

    // W table timing and numeric cells.
    let t0 = std::time::Instant::now();
    let cells = w_table(7, &OptimizerConfig::default()).unwrap();
    println!("w_table(7) took {:.2}s", t0.elapsed().as_secs_f64());
    for c in &cells {
        if matches!((c.m, c.n), (4, 5) | (5, 6) | (5, 7) | (6, 7)) {
            println!(
                "cell m={} n={}: pmax={:.6} method={} converged={}",
                c.m, c.n, c.pmax, c.method, c.converged
            );
        }
    }

    // Direct optimizer on a couple of fraction cells.
    let t0 = std::time::Instant::now();
    for (n, m, expect) in [
        (4usize, 4usize, 0.75f64.powi(3)),
        (5, 3, 3.0 / 5.0),
        (6, 4, 0.5),
        (6, 6, (5.0f64 / 6.0).powi(5)),
    ] {
        let state = make_w(n).unwrap();
        let p = Partition::single_qubit_plus_rest(n, m).unwrap();
        let r = optimize(&state, &p, &OptimizerConfig::default()).unwrap();
        println!(
            "optimize W n={n} m={m}: pmax={:.8} expect={expect:.8} diff={:.2e} sweeps={} conv={}",
            r.pmax,
            (r.pmax - expect).abs(),
            r.sweeps_used,
            r.converged
        );
    }
    println!("direct optimizer checks took {:.2}s", t0.elapsed().as_secs_f64());
}
