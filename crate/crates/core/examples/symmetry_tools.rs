//! Shell detection and the symmetry operations used to tidy up searched
//! rules: axis alignment, simplex orientation, shell projection and mirror
//! symmetrization.
//!
//! ```text
//! cargo run --release --example symmetry_tools
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spherical_cubature::catalog::{build_paper_rule_f64, TableId};
use spherical_cubature::rule::{verify, CubatureRule};
use spherical_cubature::search::{solve, SearchConfig};
use spherical_cubature::moments::build_moment_system;
use spherical_cubature::symmetry::{
    align_axes, cayley_rotation, default_shell_tolerances, detect_shells, orient_simplex, project_to_shell, rotate, symmetrize_bilateral,
};
use spherical_cubature::Region;

fn jitter(rule: &CubatureRule, size: f64, seed: u64) -> CubatureRule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = rule.clone();
    for x in &mut out.points {
        *x += size * rng.random_range(-1.0..1.0);
    }
    for w in &mut out.weights {
        *w *= 1.0 + size * rng.random_range(-1.0..1.0);
    }
    out
}


fn main() -> spherical_cubature::Result<()> {
    let rule = build_paper_rule_f64(TableId::T5_22_4, Region::ExpR2)?;
    let (rt, wt) = default_shell_tolerances(&rule);
    let shells = detect_shells(&rule, rt, wt);
    println!("5_22_4 shells {:?}", shells.sizes());

    // Hide the rule's orientation, then recover it from the 6-point simplex shell.
    let turned = rotate(&rule, &cayley_rotation(5, &[0.3, -0.2, 0.5, 0.1, -0.4, 0.7, 0.2, -0.6, 0.3, 0.1])?);
    let simplex = shells.shells[1].members.clone();
    let back = orient_simplex(&turned, &simplex)?;
    println!("rotated, then simplex shell oriented (verifies: {}):", verify(&back, 4, 1e-11).pass);
    for &i in &simplex {
        println!("  {:?}", back.point(i).iter().map(|x| format!("{x:+.6}")).collect::<Vec<_>>());
    }

    let aligned = align_axes(&turned, &simplex[..5])?;
    println!("aligned first simplex vertex: {:?}", aligned.point(simplex[0]));

    // A perturbed mirror-symmetric rule: symmetrize, then let the solver finish.
    let exact = build_paper_rule_f64(TableId::T2_10_6, Region::ExpR2)?;
    let (sym, axis) = symmetrize_bilateral(&jitter(&exact, 1e-4, 11), None)?;
    let system = build_moment_system(Region::ExpR2, 2, 6, 0)?;
    let fixed = solve(&sym, &system, &SearchConfig::new(Region::ExpR2, 2, 6, sym.len()));
    println!("2_10_6 mirrored about axis {axis}: {:?}", fixed.outcome);

    // Put a noisy outer shell back on one sphere.
    let two_shell = build_paper_rule_f64(TableId::T6_28_4, Region::ExpR2)?;
    let noisy = jitter(&two_shell, 1e-3, 4);
    let outer = detect_shells(&noisy, 1e-2, default_shell_tolerances(&noisy).1).shells.last().unwrap().members.clone();
    let projected = project_to_shell(&noisy, &outer, None, 1.0)?;
    let fixed = solve(&projected, &build_moment_system(Region::ExpR2, 6, 4, 0)?, &SearchConfig::new(Region::ExpR2, 6, 4, projected.len()));
    println!(
        "6_28_4 outer shell of {} projected: {:?}, verifies: {}",
        outer.len(),
        fixed.outcome,
        fixed.rule.as_ref().is_some_and(|r| verify(r, 4, 1e-11).pass)
    );
    Ok(())
}
