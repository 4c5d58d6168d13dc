//! Instance builders shared by the benchmark targets. All builders are
//! deterministic in the requested size, so timings are comparable
//! across runs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treembed_core::oracle::brute_force;
use treembed_core::poly::check_lca;
use treembed_core::random::{
    deep_random_tree, planted_pattern, random_cnf, random_pattern, random_tree, spine_pattern,
    PlantConfig,
};
use treembed_core::reductions::{gen_anc_reduction, gen_inj_reduction};
use treembed_core::{EmbeddingKind, Pattern, Tree};

/// Uniform random tree with a planted, lca-closed pattern of about
/// size/100 nodes; the kind of instance the lca checker is built for.
pub fn lca_instance(size: usize) -> (Tree, Pattern) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x13CA ^ size as u64);
    let t = random_tree(&mut rng, size.max(1), &["a", "b", "c", "d"]);
    let p = planted_pattern(
        &mut rng,
        &t,
        &PlantConfig {
            target_nodes: (size / 100).max(8),
            close_under_lca: true,
            wildcard_prob: 0.1,
            desc_prob: 0.3,
            max_degree: None,
        },
    );
    (t, p)
}

/// Deep random tree with a degree-2 spine pattern along its longest
/// chain; the shape the bounded anc checker accepts.
pub fn anc_instance(size: usize) -> (Tree, Pattern) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA6C ^ size as u64);
    let t = deep_random_tree(&mut rng, size.max(2), &["a", "b", "c", "d", "e", "f"], 40);
    let p = spine_pattern(&mut rng, &t, 0.55, 0.5);
    (t, p)
}

/// Hard instances from a random formula with n variables and n
/// clauses, one for the injective solver and one for the anc solver.
pub fn reduction_instances(n: usize) -> ((Tree, Pattern), (Tree, Pattern)) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6047 ^ n as u64);
    let phi = random_cnf(&mut rng, n.max(1) as u32, n.max(1));
    (gen_inj_reduction(&phi), gen_anc_reduction(&phi))
}

/// The scaling instances are far beyond the oracle's reach, so
/// agreement is asserted once on oracle-sized instances before any
/// timing runs. Panics on a disagreement.
pub fn assert_lca_matches_oracle_on_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x13CA5);
    for i in 0..25 {
        let t = random_tree(&mut rng, 12, &["a", "b", "c"]);
        let p = if i % 2 == 0 {
            planted_pattern(
                &mut rng,
                &t,
                &PlantConfig {
                    target_nodes: 4,
                    close_under_lca: true,
                    wildcard_prob: 0.2,
                    desc_prob: 0.3,
                    max_degree: None,
                },
            )
        } else {
            random_pattern(&mut rng, 5, &["a", "b", "c"], 0.2, 0.3, None)
        };
        let fast = check_lca(&t, &p).verdict;
        let slow = brute_force(&t, &p, EmbeddingKind::Lca)
            .expect("spot-check instances fit the oracle")
            .verdict;
        assert_eq!(
            fast, slow,
            "lca checker disagrees with the oracle (instance {i})"
        );
    }
}
