use std::path::{Path, PathBuf};

use dh_core::davis::FiniteQuotient;
use dh_core::euler::{self, SignVerdict};
use dh_core::hierarchy::{run_hierarchy, WallFamily};
use dh_core::{
    basic_construction, build_chamber, prepare_mirrored_manifold, run_trick, CoxeterSystem,
    SimplicialComplex,
};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::report::{digest, InputDigest, CAVEAT_ACYCLIC, CAVEAT_HOMOLOGY_ONLY, CAVEAT_TRUNCATED};
use crate::{Cli, CliError, Command, CorpusAction};

/// Largest finite group whose whole Davis complex is realized for the
/// chamber-count check of `dh euler`.
const CHAMBER_CHECK_LIMIT: u64 = 2_000;
/// Largest quotient whose order is reported.
const QUOTIENT_ORDER_CAP: usize = 1_000_000;

pub(crate) struct Outcome {
    pub inputs: Vec<InputDigest>,
    pub pass: bool,
    pub caveats: Vec<String>,
    pub result: Value,
}

struct Inputs(Vec<InputDigest>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        self.0.push(digest(path, &bytes));
        String::from_utf8(bytes)
            .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))
    }

    fn coxeter(&mut self, path: &Path, memo_cap: u64) -> Result<CoxeterSystem, CliError> {
        let text = self.read(path)?;
        Ok(CoxeterSystem::parse(&text)?.with_memo_cap(memo_cap as usize))
    }

    fn complex(&mut self, path: &Path) -> Result<SimplicialComplex, CliError> {
        let text = self.read(path)?;
        Ok(SimplicialComplex::parse(&text)?)
    }

    fn quotient(&mut self, recipe: &str, w: &CoxeterSystem) -> Result<FiniteQuotient, CliError> {
        match recipe.strip_prefix("perm:") {
            Some(path) => {
                let text = self.read(Path::new(path))?;
                Ok(FiniteQuotient::from_permutations(w, &text)?)
            }
            None => Ok(FiniteQuotient::from_recipe(w, recipe)?),
        }
    }
}

fn big(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("results serialize")
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let mut inputs = Inputs(Vec::new());
    let memo = cli.memo_cap;
    let (pass, caveats, result) = match &cli.command {
        Command::Group {
            coxeter,
            radius,
            word,
        } => {
            let w = inputs.coxeter(coxeter, memo)?;
            group(&w, *radius, word.as_deref())?
        }
        Command::Nerve { coxeter, dim } => {
            let w = inputs.coxeter(coxeter, memo)?;
            nerve(&w, *dim)?
        }
        Command::Davis {
            coxeter,
            radius,
            quotient,
            quotient_file,
            out_dir,
        } => {
            let w = inputs.coxeter(coxeter, memo)?;
            let q = match crate::recipe(quotient.as_deref(), quotient_file.as_ref()) {
                Some(r) => Some(inputs.quotient(&r, &w)?),
                None => None,
            };
            davis(&w, *radius, q.as_ref(), out_dir.as_deref())?
        }
        Command::Hierarchy {
            coxeter,
            radius,
            quotient,
            quotient_file,
            order,
            force,
            out_dir,
        } => {
            let w = inputs.coxeter(coxeter, memo)?;
            let recipe = crate::recipe(Some(quotient), quotient_file.as_ref()).unwrap_or_default();
            let q = inputs.quotient(&recipe, &w)?;
            hierarchy(&w, *radius, &q, order.as_deref(), *force, out_dir.as_deref(), cli.verbose)?
        }
        Command::Euler { coxeter } => {
            let w = inputs.coxeter(coxeter, memo)?;
            euler_cmd(&w)?
        }
        Command::CharneyDavis { complex } => {
            let l = inputs.complex(complex)?;
            let r = euler::charney_davis(&l);
            let mut caveats = Vec::new();
            if l.dim() >= 3 {
                caveats.push(CAVEAT_HOMOLOGY_ONLY.to_string());
            }
            (r.sign != SignVerdict::Violated, caveats, value(&r))
        }
        Command::Trick {
            manifold,
            boundary,
            radius,
            quotient,
            quotient_file,
        } => {
            let m = inputs.complex(manifold)?;
            let b = inputs.complex(boundary)?;
            let mm = prepare_mirrored_manifold(&m, &b)?;
            let recipe = crate::recipe(Some(quotient), quotient_file.as_ref()).unwrap_or_default();
            let q = inputs.quotient(&recipe, &mm.system)?;
            let out = run_trick(&mm, *radius, &q)?;
            let caveats = out.hierarchy.caveats.clone();
            (out.pass, caveats, value(&out))
        }
        Command::SphereCheck { complex, dim, disk } => {
            let k = inputs.complex(complex)?;
            let d = dim.unwrap_or_else(|| k.dim());
            let mut caveats = Vec::new();
            if d >= 3 {
                caveats.push(CAVEAT_HOMOLOGY_ONLY.to_string());
            }
            if *disk {
                let c = k.is_homology_disk(d);
                (c.pass(), caveats, value(&c))
            } else {
                let c = k.is_homology_sphere(d);
                (c.pass(), caveats, value(&c))
            }
        }
        Command::Homology { complex, reduced } => {
            let k = inputs.complex(complex)?;
            let h = k.homology(*reduced)?;
            let result = json!({
                "f_vector": k.f_vector(),
                "euler_characteristic": k.euler_characteristic(),
                "homology": h.to_string(),
                "groups": value(&h),
            });
            (true, Vec::new(), result)
        }
        Command::Corpus {
            action: CorpusAction::Run { dir },
        } => {
            let (pass, result) = crate::corpus::run(dir, &mut inputs.0)?;
            (pass, Vec::new(), result)
        }
    };
    Ok(Outcome {
        inputs: inputs.0,
        pass,
        caveats,
        result,
    })
}

type Parts = (bool, Vec<String>, Value);

fn group(w: &CoxeterSystem, radius: usize, word: Option<&str>) -> Result<Parts, CliError> {
    let all: Vec<_> = w.generators().collect();
    let types = w.classify(&all);
    let ball = w.cayley_ball(radius)?;
    let reduced = match word {
        Some(text) => {
            let e = w.reduce_word(&w.parse_word(text)?)?;
            Some(json!({
                "input": text,
                "normal_form": w.format_word(e.normal_form()),
                "length": e.length(),
            }))
        }
        None => None,
    };
    let result = json!({
        "generators": w.names(),
        "rank": w.rank(),
        "right_angled": w.is_right_angled(),
        "even": w.is_even(),
        "spherical": types.is_some(),
        "type": types.as_ref().map(|t| t.iter().map(|f| f.label()).collect::<Vec<_>>().join(" x ")),
        "order": if types.is_some() { big(&w.spherical_order(&all)?) } else { Value::Null },
        "ball": {
            "radius": radius,
            "size": ball.len(),
            "by_length": ball.length_histogram(),
            "exhausted": ball.exhausted,
            "elements": ball.elements.iter().map(|e| w.format_word(e.normal_form())).collect::<Vec<_>>(),
            "edges": ball.edges.iter().map(|&(i, j, g)| json!([i, j, w.name(g)])).collect::<Vec<_>>(),
        },
        "word": reduced,
    });
    Ok((true, Vec::new(), result))
}

fn nerve(w: &CoxeterSystem, dim: Option<isize>) -> Result<Parts, CliError> {
    let n = w.build_nerve()?;
    let d = dim.unwrap_or(n.complex.dim() + 1);
    let cert = w.manifold_check(&n, d);
    let maximal: Vec<String> = n.maximal_subsets().iter().map(|t| w.format_subset(t)).collect();
    let result = json!({
        "complex": n.complex.to_text(),
        "f_vector": n.complex.f_vector(),
        "spherical_subsets": n
            .spherical
            .iter()
            .map(|s| json!({"subset": w.format_subset(&s.subset), "order": big(&s.order)}))
            .collect::<Vec<_>>(),
        "maximal": maximal,
        "flag": n.complex.is_flag(),
        "manifold_dimension": d,
        "manifold": value(&cert),
        "pass": cert.pass(),
    });
    let caveats = if d >= 4 {
        vec![CAVEAT_HOMOLOGY_ONLY.to_string()]
    } else {
        Vec::new()
    };
    Ok((cert.pass(), caveats, result))
}

fn davis(
    w: &CoxeterSystem,
    radius: usize,
    q: Option<&FiniteQuotient>,
    out_dir: Option<&Path>,
) -> Result<Parts, CliError> {
    let n = w.build_nerve()?;
    let k = build_chamber(&n)?;
    let u = basic_construction(w, &k, radius)?;
    let real = u.realize()?;
    let walls = u.walls()?;
    let separation = u.separation_check()?;
    let halfspace = u.halfspace_check(&walls);
    let local = u.local_arrangement_check(&real, &walls)?;
    let bl = n.complex.barycentric_subdivision()?;
    let links = u.vertex_link_check(&real, &bl);
    let mut pass = separation.pass && halfspace.pass && local.pass && links.pass;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
        let path = dir.join("realization.complex");
        std::fs::write(&path, real.complex.to_text()).map_err(|e| CliError::Io(path.clone(), e))?;
    }
    let quotient = match q {
        Some(q) => {
            let torsion_free = q.torsion_free_check(w, &n)?;
            let trivial = q.trivial_intersection_check(&u, &real, &walls);
            pass &= torsion_free.pass && trivial.pass;
            json!({
                "recipe": q.recipe(),
                "order": q.order(QUOTIENT_ORDER_CAP),
                "torsion_free": value(&torsion_free),
                "trivial_intersection": value(&trivial),
            })
        }
        None => Value::Null,
    };
    let result = json!({
        "chambers": u.chamber_count(),
        "exhausted": u.is_exhausted(),
        "f_vector": real.complex.f_vector(),
        "homology": real.complex.reduced_homology()?.to_string(),
        "wall_count": walls.len(),
        "walls": walls
            .iter()
            .map(|wall| {
                json!({
                    "reflection": u.wall_name(wall),
                    "panels": wall.panels.iter().map(|p| u.panel_name(p)).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
        "separation": value(&separation),
        "halfspace": value(&halfspace),
        "local_arrangement": value(&local),
        "vertex_links": value(&links),
        "quotient": quotient,
    });
    let mut caveats = vec![CAVEAT_ACYCLIC.to_string()];
    if !u.is_exhausted() {
        caveats.push(CAVEAT_TRUNCATED.to_string());
    }
    Ok((pass, caveats, result))
}

#[allow(clippy::too_many_arguments)]
fn hierarchy(
    w: &CoxeterSystem,
    radius: usize,
    q: &FiniteQuotient,
    order: Option<&[usize]>,
    force: bool,
    out_dir: Option<&Path>,
    verbose: bool,
) -> Result<Parts, CliError> {
    let n = w.build_nerve()?;
    let k = build_chamber(&n)?;
    let u = basic_construction(w, &k, radius)?;
    let walls = u.walls()?;
    let real = u.realize()?;
    let torsion_free = q.torsion_free_check(w, &n)?;
    let trivial = q.trivial_intersection_check(&u, &real, &walls);
    let mut family = WallFamily::from_quotient(&u, &walls, q);
    if let Some(order) = order {
        family = family.reordered(order)?;
    }
    let trace = run_hierarchy(&u, &family, force)?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
        for (i, stage) in trace.stages().iter().enumerate() {
            let path: PathBuf = dir.join(format!("stage-{i}.complex"));
            let text = stage.realize()?.complex.to_text();
            std::fs::write(&path, text).map_err(|e| CliError::Io(path.clone(), e))?;
        }
    }
    let euler_ledger: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            let mv = &s.mayer_vietoris;
            json!({"step": s.index, "chi_m": mv.chi_m, "chi_n": mv.chi_n, "chi_f": mv.chi_f, "holds": mv.euler_identity})
        })
        .collect();
    let mut trace_value = value(&trace);
    if !verbose {
        for step in trace_value["steps"].as_array_mut().into_iter().flatten() {
            let tidy_pass = step["residual_tidy"]["pass"].clone();
            step["residual_tidy"] = json!({ "pass": tidy_pass });
        }
    }
    let pass = torsion_free.pass && trivial.pass && trace.pass;
    let result = json!({
        "quotient": q.recipe(),
        "chambers": u.chamber_count(),
        "walls": walls.len(),
        "classes": family.classes.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
        "torsion_free": value(&torsion_free),
        "trivial_intersection": value(&trivial),
        "euler_ledger": euler_ledger,
        "trace": trace_value,
    });
    Ok((pass, trace.caveats.clone(), result))
}

fn euler_cmd(w: &CoxeterSystem) -> Result<Parts, CliError> {
    let n = w.build_nerve()?;
    let r = euler::euler_report(w, &n);
    let all: Vec<_> = w.generators().collect();
    let mut chamber_check = Value::Null;
    let mut pass = r.sign != SignVerdict::Violated;
    if w.is_spherical(&all) {
        let order = w.spherical_order(&all)?;
        if order <= BigUint::from(CHAMBER_CHECK_LIMIT) {
            // the longest element has length equal to the number of reflections
            let k = build_chamber(&n)?;
            let u = basic_construction(w, &k, w.reflection_count(&all)?)?;
            let chi = dh_core::euler_of_complex(&u.realize()?.complex);
            let order = BigInt::from(order);
            let holds = r.chi_orb.numer() * &order == BigInt::from(chi) * r.chi_orb.denom();
            pass &= holds;
            chamber_check = json!({
                "group_order": big(&order.to_biguint().expect("positive")),
                "chambers": u.chamber_count(),
                "chi_realization": chi,
                "holds": holds,
            });
        }
    }
    let mut result = value(&r);
    result["chamber_check"] = chamber_check;
    Ok((pass, Vec::new(), result))
}
