use std::hint::black_box;

use actdim_core::chains::{integral_homology, BoundaryMatrices};
use actdim_core::polyjoin::octahedralization;
use actdim_core::snf::invariant_factors;
use actdim_core::vk::{coboundary_certificate, vk_cocycle, vk_nontrivial};
use actdim_core::{Arrangement, ConfigComplex, FlatPoset, Hyperplane, SimplicialComplex, VertexOrdering};
use criterion::{criterion_group, criterion_main, Criterion};

fn cycle(n: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let facets: Vec<Vec<String>> = (0..n).map(|i| vec![labels[i].clone(), labels[(i + 1) % n].clone()]).collect();
    SimplicialComplex::from_facets(&labels, &facets).unwrap()
}

fn complete_graph(n: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut facets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            facets.push(vec![labels[i].clone(), labels[j].clone()]);
        }
    }
    SimplicialComplex::from_facets(&labels, &facets).unwrap()
}

fn snf(c: &mut Criterion) {
    // O_2 of the pentagon is a 3-dimensional complex on 15 vertices
    let k = octahedralization(&cycle(5), 2).unwrap().complex;
    let bm = BoundaryMatrices::new(&k);
    let d2 = bm.dense_integer(2);
    c.bench_function("snf/boundary_2_of_O2_pentagon", |b| b.iter(|| invariant_factors(black_box(&d2))));
    c.bench_function("homology/O2_pentagon", |b| b.iter(|| integral_homology(black_box(&k))));
}

fn config(c: &mut Criterion) {
    let k = octahedralization(&cycle(5), 1).unwrap().complex;
    c.bench_function("config/O1_pentagon", |b| b.iter(|| ConfigComplex::new(black_box(&k))));
    let k2 = octahedralization(&cycle(5), 2).unwrap().complex;
    c.bench_function("config/O2_pentagon", |b| b.iter(|| ConfigComplex::new(black_box(&k2))));
}

fn gf2_solve(c: &mut Criterion) {
    let k = octahedralization(&cycle(5), 2).unwrap().complex;
    let cc = ConfigComplex::new(&k);
    let mut seq: Vec<usize> = (0..k.vertex_count()).collect();
    seq.reverse();
    let ordering = VertexOrdering::from_sequence(&seq).unwrap();
    let cocycle = vk_cocycle(&cc, 5, &ordering);
    c.bench_function("gf2/certificate_deg5_O2_pentagon", |b| {
        b.iter(|| coboundary_certificate(black_box(&cc), black_box(&cocycle)).unwrap())
    });
    let k5 = complete_graph(5);
    let id = VertexOrdering::identity(5);
    c.bench_function("gf2/vk2_K5", |b| b.iter(|| vk_nontrivial(black_box(&k5), 2, &id, None).unwrap()));
}

fn poset(c: &mut Criterion) {
    let normals: [[i64; 3]; 6] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [0, 1, -1], [1, 0, -1]];
    let a = Arrangement::new(3, normals.iter().map(|n| Hyperplane::from_ints(n, 0)).collect()).unwrap();
    c.bench_function("arrangement/braid_poset_and_nested", |b| {
        b.iter(|| {
            let p = FlatPoset::new(black_box(&a));
            (p.mobius_poincare_beta(), p.irreducible_complex())
        })
    });
}

criterion_group!(benches, snf, config, gf2_solve, poset);
criterion_main!(benches);
