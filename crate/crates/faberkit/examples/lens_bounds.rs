//! Minimal tour: build a lens, print its constants, and check the
//! operator-norm bound on a seeded normal matrix.

use faberkit::bounds::{theorem_check, TheoremCase};
use faberkit::conformal::{build_map, gamma};
use faberkit::ensembles::{generate, Family};
use faberkit::geometry::{v_of, DomainE};

fn main() -> faberkit::Result<()> {
    let lens = DomainE::lens(0.5, 1.0, 3.0, 2.0)?;
    let map = build_map(&lens)?;
    println!("v(E) = {}, gamma = {}", v_of(&lens)?, gamma(&map)?);

    let a = generate::<f64>(Family::NormalRandom, 12, 7)
        .scale(faberkit::C64::new(0.6, 0.0))
        .shift_diag(-faberkit::C64::new(3.2, 0.0));
    for report in theorem_check(&a, &lens, TheoremCase::NumericalRadiusCondition, &[1, 5, 10])? {
        println!("n = {}: ||F_n(A)|| = {:?} <= {}", report.n, report.norm_fn_a, report.bound_theorem);
    }
    Ok(())
}
