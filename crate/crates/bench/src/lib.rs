//! Shared workloads for the engine benchmarks.

use onp::{sample, GeneratorId};

/// A prime together with the generators that random operands are drawn from.
#[derive(Clone, Debug)]
pub struct Workload {
    pub name: &'static str,
    pub p: u32,
    pub gens: Vec<GeneratorId>,
}

fn gen(u: u32, n: u32) -> GeneratorId {
    GeneratorId::new(u, n).expect("valid generator")
}

/// Finite fields of naturals, a mixed field with `ω`, and one that needs
/// `χ_5` and `χ_7`.
pub fn workloads() -> Vec<Workload> {
    vec![
        Workload {
            name: "on2/naturals-2^8",
            p: 2,
            gens: sample::power_of_two_generators(3),
        },
        Workload {
            name: "on3/chi2-chi4-chi3",
            p: 3,
            gens: sample::mixed_generators(),
        },
        Workload {
            name: "on5/chi3-chi4",
            p: 5,
            gens: vec![gen(2, 1), gen(2, 2), gen(3, 1)],
        },
        Workload {
            name: "on2/chi5-chi7",
            p: 2,
            gens: vec![gen(2, 1), gen(3, 1), gen(5, 1), gen(7, 1)],
        },
    ]
}
