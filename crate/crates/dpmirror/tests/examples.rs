//! Runs every example so that they stay in sync with the library.

#[allow(dead_code)]
#[path = "../examples/braid_replay.rs"]
mod braid_replay;
#[allow(dead_code)]
#[path = "../examples/branch_monodromy.rs"]
mod branch_monodromy;
#[allow(dead_code)]
#[path = "../examples/cqs_descriptor.rs"]
mod cqs_descriptor;
#[allow(dead_code)]
#[path = "../examples/critical_points.rs"]
mod critical_points;
#[allow(dead_code)]
#[path = "../examples/fiber_lattice.rs"]
mod fiber_lattice;
#[allow(dead_code)]
#[path = "../examples/left_dual_gram.rs"]
mod left_dual_gram;
#[allow(dead_code)]
#[path = "../examples/newton_pick.rs"]
mod newton_pick;
#[allow(dead_code)]
#[path = "../examples/normalize_constants.rs"]
mod normalize_constants;
#[allow(dead_code)]
#[path = "../examples/palais_smale.rs"]
mod palais_smale;
#[allow(dead_code)]
#[path = "../examples/quiver_dims.rs"]
mod quiver_dims;
#[allow(dead_code)]
#[path = "../examples/sturm_counts.rs"]
mod sturm_counts;
#[allow(dead_code)]
#[path = "../examples/trajectory_csv.rs"]
mod trajectory_csv;

#[test]
fn combinatorics_examples_run() {
    cqs_descriptor::run(7, 3).unwrap();
    cqs_descriptor::run(5, 3).unwrap();
    fiber_lattice::run(7).unwrap();
    left_dual_gram::run(5).unwrap();
    braid_replay::run(7).unwrap();
}

#[test]
fn quiver_examples_run() {
    quiver_dims::run(7).unwrap();
    normalize_constants::run(7).unwrap();
}

#[test]
fn numerics_examples_run() {
    critical_points::run(5, 1e-2).unwrap();
    branch_monodromy::run(5).unwrap();
    sturm_counts::run(7).unwrap();
    palais_smale::run(500).unwrap();
    newton_pick::run(15).unwrap();
}

#[test]
fn trajectory_example_writes_csv() {
    let mut buf = Vec::new();
    trajectory_csv::run(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# permutation=0 1 2 4 3 5"));
    assert!(lines.next().unwrap().starts_with("step,t_re,t_im,root_0_re"));
    assert_eq!(lines.count(), 129);
}
