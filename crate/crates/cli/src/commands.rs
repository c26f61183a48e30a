//! Dispatch from parsed arguments to library calls, and report assembly.

use std::collections::BTreeSet;
use std::path::Path;

use actdim_core::arrangement::{arrangement_actdim_report, format_rational, Rational};
use actdim_core::chains::{
    betti_z2, edce_verdict_from, find_z2_cycle, integral_homology, reduced_betti_z2,
};
use actdim_core::coxart::{artin_actdim_report, graph_product_actdim_report, LODOT_NOTE};
use actdim_core::polyjoin::{doubled_complex, octahedralization};
use actdim_core::vk::{
    meshed, octahedral_witness, omega_chain, star_condition, vk_cocycle, vk_nontrivial_in, VkClass,
};
use actdim_core::{
    Bound, ConfigCell, ConfigComplex, FlatPoset, OctaComplex, Simplex, SimplicialComplex,
    VertexOrdering,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{
    one_path, parse_lists, parse_simplices, ArrangementFile, ComplexFile, CoxeterFile, Inputs,
    OctaSection,
};
use crate::{
    ArrCmd, BuildingChoice, Cli, CliError, Command, ComplexCmd, CoxCmd, EdceMode, GpCmd, InputFile,
    OctaCmd, VkCmd,
};

#[derive(Serialize)]
struct Report {
    command: String,
    input_digest: String,
    result: Value,
    provenance: Vec<String>,
    witnesses: Vec<Value>,
}

struct Outcome {
    result: Value,
    provenance: Vec<String>,
    witnesses: Vec<Value>,
}

impl Outcome {
    fn plain(result: Value) -> Self {
        Outcome {
            result,
            provenance: Vec::new(),
            witnesses: Vec::new(),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn provenance_of(bounds: &[Bound]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    bounds
        .iter()
        .filter(|b| seen.insert(b.provenance.clone()))
        .map(|b| b.provenance.clone())
        .collect()
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let mut inputs = Inputs::new();
    let (name, outcome) = dispatch(&cli.command, &mut inputs)?;
    let text = if cli.quiet {
        serde_json::to_string_pretty(&outcome.result)
    } else {
        serde_json::to_string_pretty(&Report {
            command: name.to_string(),
            input_digest: inputs.digest(),
            result: outcome.result,
            provenance: outcome.provenance,
            witnesses: outcome.witnesses,
        })
    };
    Ok(text.expect("serializable"))
}

fn complex_in(input: &InputFile, inputs: &mut Inputs) -> Result<(ComplexFile, SimplicialComplex), CliError> {
    let path = one_path(&input.file, &input.complex)?;
    let file: ComplexFile = inputs.parse(&path)?;
    let k = file.complex()?;
    Ok((file, k))
}

fn path_of(input: &InputFile) -> Result<std::path::PathBuf, CliError> {
    one_path(&input.file, &input.complex)
}

fn dispatch(cmd: &Command, inputs: &mut Inputs) -> Result<(&'static str, Outcome), CliError> {
    Ok(match cmd {
        Command::Complex(c) => match c {
            ComplexCmd::Homology(i) => ("complex homology", homology(&complex_in(i, inputs)?.1)),
            ComplexCmd::Edce(i) => ("complex edce", edce(&complex_in(i, inputs)?.1)),
            ComplexCmd::Flag(i) => {
                let k = complex_in(i, inputs)?.1;
                let (is_flag, completion) = k.flag_check_and_complete();
                (
                    "complex flag",
                    Outcome::plain(json!({
                        "is_flag": is_flag,
                        "completion": ComplexFile::from_complex(&completion),
                    })),
                )
            }
            ComplexCmd::Subdivide(i) => {
                let k = complex_in(i, inputs)?.1;
                let sd = k.barycentric_subdivision();
                ("complex subdivide", Outcome::plain(to_value(&ComplexFile::from_complex(&sd))))
            }
        },
        Command::Octa(c) => match c {
            OctaCmd::Build { input, m } => ("octa build", octa_build(complex_in(input, inputs)?, *m)?),
            OctaCmd::Doubled {
                input,
                m,
                cycle,
                simplex,
            } => {
                let l = complex_in(input, inputs)?.1;
                let octa = octahedralization(&l, *m)?;
                let (cycle, delta) = cycle_and_simplex(&l, cycle.as_deref(), simplex.as_deref())?;
                let d = doubled_complex(&octa, &cycle, &delta)?;
                (
                    "octa doubled",
                    Outcome::plain(json!({
                        "complex": ComplexFile::from_complex(&d.complex),
                        "cycle": labels_of(&l, &cycle),
                        "simplex": l.simplex_labels(&delta),
                        "parent_vertices": d.parent_index.iter().map(|&v| octa.complex.label(v)).collect::<Vec<_>>(),
                    })),
                )
            }
        },
        Command::Vk(c) => match c {
            VkCmd::Compute {
                input,
                degree,
                ordering,
            } => {
                let (_, k) = complex_in(input, inputs)?;
                let ord = ordering_for(&k, ordering.as_deref(), inputs)?;
                let cc = ConfigComplex::new(&k);
                let co = vk_cocycle(&cc, *degree, &ord);
                (
                    "vk compute",
                    Outcome::plain(json!({
                        "degree": degree,
                        "ordering": ordering_labels(&k, &ord),
                        "cell_count": cc.cell_count(*degree),
                        "support_size": co.support.len(),
                        "is_cocycle": co.is_cocycle(&cc),
                        "support": cells_json(&k, co.support.iter()),
                    })),
                )
            }
            VkCmd::Nontrivial {
                input,
                degree,
                ordering,
            } => ("vk nontrivial", vk_nontrivial_cmd(input, *degree, ordering.as_deref(), inputs)?),
            VkCmd::Omega {
                input,
                m,
                cycle,
                simplex,
            } => {
                let l = complex_in(input, inputs)?.1;
                ("vk omega", omega_cmd(&l, *m, cycle.as_deref(), simplex.as_deref())?)
            }
            VkCmd::Star {
                input,
                cycle,
                simplex,
            } => {
                let l = complex_in(input, inputs)?.1;
                let (cycle, delta) = cycle_and_simplex(&l, cycle.as_deref(), simplex.as_deref())?;
                let holds = star_condition(&l, &cycle, &delta)?;
                (
                    "vk star",
                    Outcome::plain(json!({
                        "holds": holds,
                        "cycle": labels_of(&l, &cycle),
                        "simplex": l.simplex_labels(&delta),
                    })),
                )
            }
        },
        Command::Arr(c) => arr_cmd(c, inputs)?,
        Command::Cox(c) => match c {
            CoxCmd::Nerve(i) => {
                let sys = inputs.parse::<CoxeterFile>(&path_of(i)?)?.system()?;
                let nerve = sys.nerve();
                (
                    "cox nerve",
                    Outcome::plain(json!({
                        "dim": nerve.dim(),
                        "is_flag": nerve.is_flag(),
                        "complex": ComplexFile::from_complex(&nerve),
                    })),
                )
            }
            CoxCmd::Lodot(i) => {
                let sys = inputs.parse::<CoxeterFile>(&path_of(i)?)?.system()?;
                let lo = sys.l_odot();
                let subsets: Vec<Vec<&str>> = lo
                    .subsets
                    .iter()
                    .map(|t| t.iter().map(|&s| sys.generators()[s].as_str()).collect())
                    .collect();
                (
                    "cox lodot",
                    Outcome {
                        result: json!({
                            "complex": ComplexFile::from_complex(&lo.complex),
                            "subsets": subsets,
                            "note": LODOT_NOTE,
                        }),
                        provenance: vec![LODOT_NOTE.to_string()],
                        witnesses: Vec::new(),
                    },
                )
            }
            CoxCmd::Actdim { input, assume_kpi1 } => {
                let sys = inputs.parse::<CoxeterFile>(&path_of(input)?)?.system()?;
                let r = artin_actdim_report(&sys, *assume_kpi1);
                (
                    "cox actdim",
                    Outcome {
                        provenance: provenance_of(&r.bounds),
                        result: to_value(&r),
                        witnesses: Vec::new(),
                    },
                )
            }
        },
        Command::Gp(GpCmd::Actdim { input, edce }) => {
            let (file, l) = complex_in(input, inputs)?;
            let data = file.vertex_data(&l)?;
            let over = match edce {
                EdceMode::Yes => Some(true),
                EdceMode::No => Some(false),
                EdceMode::Auto => None,
            };
            let r = graph_product_actdim_report(&l, &data, over)?;
            (
                "gp actdim",
                Outcome {
                    provenance: provenance_of(&r.bounds),
                    result: to_value(&r),
                    witnesses: Vec::new(),
                },
            )
        }
    })
}

fn homology(k: &SimplicialComplex) -> Outcome {
    let h = integral_homology(k);
    let degrees: Vec<Value> = h
        .degrees
        .iter()
        .enumerate()
        .map(|(i, d)| {
            json!({
                "degree": i,
                "betti_z2": d.betti_z2,
                "free_rank": d.free_rank,
                "torsion": d.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    Outcome::plain(json!({
        "dim": k.dim(),
        "f_vector": k.f_vector(),
        "euler_characteristic": k.euler_characteristic(),
        "betti_z2": h.betti_z2(),
        "reduced_betti_z2": reduced_betti_z2(k),
        "homology": degrees,
        "universal_coefficients": h.universal_coefficients_hold(),
    }))
}

fn edce(k: &SimplicialComplex) -> Outcome {
    let v = edce_verdict_from(&integral_homology(k));
    let witnesses = match &v {
        actdim_core::EdceVerdict::NotEdce { witnesses } => witnesses.iter().map(to_value).collect(),
        _ => Vec::new(),
    };
    Outcome {
        result: json!({ "dim": k.dim(), "verdict": to_value(&v) }),
        provenance: Vec::new(),
        witnesses,
    }
}

fn octa_build((file, l): (ComplexFile, SimplicialComplex), m: usize) -> Result<Outcome, CliError> {
    let octa = octahedralization(&l, m)?;
    let mut out = ComplexFile::from_complex(&octa.complex);
    let mut base = file;
    base.octahedralization = None;
    out.octahedralization = Some(OctaSection {
        base: Box::new(base),
        m,
    });
    let mut result = to_value(&out);
    result["dim"] = json!(octa.complex.dim());
    result["delta"] = json!(octa.delta);
    Ok(Outcome::plain(result))
}

fn labels_of(k: &SimplicialComplex, simplices: &[Simplex]) -> Vec<Vec<String>> {
    simplices.iter().map(|s| k.simplex_labels(s)).collect()
}

fn cells_json<'a>(k: &SimplicialComplex, cells: impl Iterator<Item = &'a ConfigCell>) -> Vec<Value> {
    cells
        .map(|c| json!([k.simplex_labels(c.first()), k.simplex_labels(c.second())]))
        .collect()
}

fn ordering_labels(k: &SimplicialComplex, ord: &VertexOrdering) -> Vec<String> {
    ord.sequence().iter().map(|&v| k.label(v).to_string()).collect()
}

fn ordering_for(
    k: &SimplicialComplex,
    path: Option<&Path>,
    inputs: &mut Inputs,
) -> Result<VertexOrdering, CliError> {
    match path {
        None => Ok(VertexOrdering::identity(k.vertex_count())),
        Some(p) => {
            let labels: Vec<String> = inputs.parse(p)?;
            Ok(VertexOrdering::from_labels(k, &labels)?)
        }
    }
}

/// A user-given cycle and simplex, or the first top-degree cycle and its first
/// simplex.
fn cycle_and_simplex(
    l: &SimplicialComplex,
    cycle: Option<&str>,
    simplex: Option<&str>,
) -> Result<(Vec<Simplex>, Simplex), CliError> {
    let cycle = match cycle {
        Some(spec) => parse_simplices(l, spec)?,
        None => {
            let d = l.dim();
            if d < 0 {
                return Err(CliError::Invalid("empty complex has no cycles".into()));
            }
            find_z2_cycle(l, d as usize)
                .ok_or_else(|| CliError::Invalid(format!("H_{d}(L; Z/2) vanishes, give --cycle")))?
        }
    };
    let delta = match simplex {
        Some(spec) => {
            let mut s = parse_simplices(l, spec)?;
            if s.len() != 1 {
                return Err(CliError::Invalid("--simplex names exactly one simplex".into()));
            }
            s.remove(0)
        }
        None => cycle
            .first()
            .cloned()
            .ok_or_else(|| CliError::Invalid("empty cycle".into()))?,
    };
    Ok((cycle, delta))
}

/// Rebuilds `O_m L` from an `octahedralization` section and checks it matches.
fn octa_of(file: &ComplexFile, k: &SimplicialComplex) -> Result<Option<OctaComplex>, CliError> {
    let Some(sec) = &file.octahedralization else {
        return Ok(None);
    };
    let base = sec.base.complex()?;
    let octa = octahedralization(&base, sec.m)?;
    if &octa.complex != k {
        return Err(CliError::Invalid(
            "complex does not match its octahedralization section".into(),
        ));
    }
    Ok(Some(octa))
}

fn vk_nontrivial_cmd(
    input: &InputFile,
    degree: usize,
    ordering: Option<&Path>,
    inputs: &mut Inputs,
) -> Result<Outcome, CliError> {
    let (file, k) = complex_in(input, inputs)?;
    let user_ord = match ordering {
        Some(p) => Some(ordering_for(&k, Some(p), inputs)?),
        None => None,
    };
    let mut witness = None;
    let mut ord = user_ord.clone().unwrap_or_else(|| VertexOrdering::identity(k.vertex_count()));
    if let Some(octa) = octa_of(&file, &k)? {
        let d = octa.base.dim();
        if d >= 0 && degree == octa.delta + d as usize {
            if let Some((omega, canonical)) = octahedral_witness(&octa)? {
                witness = Some(omega);
                if user_ord.is_none() {
                    ord = canonical;
                }
            }
        }
    }
    let cc = ConfigComplex::new(&k);
    let class = vk_nontrivial_in(&cc, degree, &ord, witness.as_ref())?;
    let mut result = json!({
        "degree": degree,
        "nontrivial": class.is_nontrivial(),
        "ordering": ordering_labels(&k, &ord),
    });
    let mut witnesses = Vec::new();
    match &class {
        VkClass::NontrivialByPairing { cycle, .. } => {
            result["method"] = json!("pairing");
            witnesses.push(json!({
                "kind": "omega_cycle",
                "degree": cycle.degree,
                "cells": cells_json(&k, cycle.support.iter()),
            }));
        }
        VkClass::NontrivialBySolver {
            rank,
            augmented_rank,
        } => {
            result["method"] = json!("solver");
            result["coboundary_rank"] = json!(rank);
            result["augmented_rank"] = json!(augmented_rank);
        }
        VkClass::Trivial { certificate } => {
            result["method"] = json!("certificate");
            witnesses.push(json!({
                "kind": "coboundary_certificate",
                "degree": certificate.degree,
                "cells": cells_json(&k, certificate.support.iter()),
            }));
        }
    }
    Ok(Outcome {
        result,
        provenance: Vec::new(),
        witnesses,
    })
}

fn omega_cmd(
    l: &SimplicialComplex,
    m: usize,
    cycle: Option<&str>,
    simplex: Option<&str>,
) -> Result<Outcome, CliError> {
    let octa = octahedralization(l, m)?;
    let (cycle, delta) = cycle_and_simplex(l, cycle, simplex)?;
    let doubled = doubled_complex(&octa, &cycle, &delta)?;
    let omega = omega_chain(&doubled, &cycle, &delta)?.map_vertices(&doubled.parent_index);
    let ord = octa.canonical_ordering(&delta);
    let mut pairing = false;
    for c in &omega.support {
        pairing ^= meshed(c.first(), c.second(), &ord)?;
    }
    Ok(Outcome {
        result: json!({
            "m": m,
            "degree": omega.degree,
            "cell_count": omega.support.len(),
            "boundary_is_zero": omega.boundary().support.is_empty(),
            "pairing": u8::from(pairing),
            "cycle": labels_of(l, &cycle),
            "simplex": l.simplex_labels(&delta),
            "ordering": ordering_labels(&octa.complex, &ord),
        }),
        provenance: Vec::new(),
        witnesses: vec![json!({
            "kind": "omega_cycle",
            "degree": omega.degree,
            "cells": cells_json(&octa.complex, omega.support.iter()),
        })],
    })
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn arr_cmd(c: &ArrCmd, inputs: &mut Inputs) -> Result<(&'static str, Outcome), CliError> {
    let input = match c {
        ArrCmd::Poset(i) | ArrCmd::Props(i) | ArrCmd::Irr(i) | ArrCmd::Poincare(i) | ArrCmd::Chain(i) => i,
        ArrCmd::Nested { input, .. } | ArrCmd::H1 { input, .. } | ArrCmd::Actdim { input, .. } => input,
    };
    let a = inputs.parse::<ArrangementFile>(&path_of(input)?)?.arrangement()?;
    let names = |hs: &[usize]| -> Vec<String> { hs.iter().map(|&h| a.names()[h].clone()).collect() };
    Ok(match c {
        ArrCmd::Poset(_) => {
            let p = FlatPoset::new(&a);
            let flats: Vec<Value> = p
                .flats()
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    json!({
                        "index": i,
                        "label": p.label(i),
                        "hyperplanes": names(&f.hyperplanes),
                        "codim": f.codim,
                        "basepoint": rationals(&f.basepoint),
                        "direction": f.direction.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut covers = Vec::new();
            for x in 0..p.len() {
                for y in 0..p.len() {
                    if p.lt(x, y) && p.flat(y).codim == p.flat(x).codim + 1 {
                        covers.push(json!([x, y]));
                    }
                }
            }
            (
                "arr poset",
                Outcome::plain(json!({ "rank": p.rank(), "flats": flats, "covers": covers })),
            )
        }
        ArrCmd::Props(_) => {
            let mut v = to_value(&a.properties());
            v["dim"] = json!(a.dim());
            ("arr props", Outcome::plain(v))
        }
        ArrCmd::Irr(_) => {
            let p = FlatPoset::new(&a);
            let decomposition = a
                .irreducible_decomposition()
                .ok()
                .map(|blocks| blocks.iter().map(|b| names(b)).collect::<Vec<_>>());
            let factors: Vec<Value> = a
                .factors()
                .iter()
                .map(|f| json!({ "hyperplanes": names(&f.hyperplanes), "rank": f.rank, "central": f.central }))
                .collect();
            (
                "arr irr",
                Outcome::plain(json!({
                    "irreducibles": p.irreducibles().iter().map(|&x| p.label(x)).collect::<Vec<_>>(),
                    "decomposition": decomposition,
                    "factors": factors,
                })),
            )
        }
        ArrCmd::Nested { building, flag, .. } => {
            let p = FlatPoset::new(&a);
            let g = match building {
                BuildingChoice::Irreducibles => p.irreducibles(),
                BuildingChoice::All => p.proper_flats(),
            };
            let mut nc = p.nested_complex(&g)?;
            if *flag {
                nc = nc.flag_completion();
            }
            (
                "arr nested",
                Outcome::plain(json!({
                    "building_set": g.iter().map(|&x| p.label(x)).collect::<Vec<_>>(),
                    "flag_completed": nc.flag_completed,
                    "dim": nc.complex.dim(),
                    "complex": ComplexFile::from_complex(&nc.complex),
                    "betti_z2": betti_z2(&nc.complex),
                })),
            )
        }
        ArrCmd::Poincare(_) => {
            let p = FlatPoset::new(&a);
            let d = p.mobius_poincare_beta();
            let mobius: Vec<Value> = (0..p.len())
                .map(|x| json!({ "flat": p.label(x), "mu": d.mobius[x] }))
                .collect();
            (
                "arr poincare",
                Outcome::plain(json!({ "mobius": mobius, "poincare": d.poincare, "beta": d.beta })),
            )
        }
        ArrCmd::Chain(_) => {
            let p = FlatPoset::new(&a);
            let chain = p
                .complete_chain()
                .map(|c| c.iter().map(|&x| p.label(x)).collect::<Vec<_>>());
            ("arr chain", Outcome::plain(json!({ "rank": p.rank(), "complete_chain": chain })))
        }
        ArrCmd::H1 { simplex, .. } => {
            let p = FlatPoset::new(&a);
            let mut flats = Vec::new();
            for list in parse_lists(simplex) {
                let mut hs = Vec::new();
                for n in &list {
                    let h = a
                        .names()
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| CliError::Invalid(format!("no hyperplane named `{n}`")))?;
                    hs.push(p.hyperplane_flat(h));
                }
                let x = p
                    .intersect(&hs)
                    .ok_or_else(|| CliError::Invalid(format!("hyperplanes {list:?} have empty intersection")))?;
                flats.push(x);
            }
            let img = p.h1_images(&flats)?;
            let mut v = to_value(&img);
            v["flats"] = json!(flats.iter().map(|&x| p.label(x)).collect::<Vec<_>>());
            v["hyperplanes"] = json!(a.names());
            ("arr h1", Outcome::plain(v))
        }
        ArrCmd::Actdim { aspherical, .. } => {
            let r = arrangement_actdim_report(&a, *aspherical);
            let mut witnesses = Vec::new();
            if let Some(c) = &r.complete_chain {
                witnesses.push(json!({ "kind": "complete_chain", "flats": c }));
            }
            if let Some(c) = &r.asphericity_contradiction {
                witnesses.push(json!({ "kind": "asphericity_contradiction", "simplex": c }));
            }
            (
                "arr actdim",
                Outcome {
                    provenance: provenance_of(&r.bounds),
                    result: to_value(&r),
                    witnesses,
                },
            )
        }
    })
}
