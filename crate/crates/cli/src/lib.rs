//! Command-line front end: deterministic, scriptable access to the lattice
//! toolkit. All output goes through the writer passed to [`run`], so tests
//! can capture it byte for byte.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use latmeas::num::BigRational;

use latmeas::boolpoly::{build_ideal, buchberger, standard_monomials};
use latmeas::catalog;
use latmeas::hull::hull;
use latmeas::io::{
    emit_tsv, parse_group, parse_lattice, serialize_lattice, Json, LatticeFile,
};
use latmeas::lattice::FiniteLattice;
use latmeas::linalg::{constraint_matrix, nullspace_dimension, smith_normal_form};
use latmeas::measures::{invariant_space, make_measure, orthogonalize, universal_measure};
use latmeas::spectrum::{enumerate_points, measurability};
use latmeas::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Points,
    Groebner,
    Nullspace,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "latmeas", version, about = "Measures on finite bounded lattices")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Largest subset size used when checking measure laws (default: all).
    #[arg(long, global = true)]
    max_subset_size: Option<usize>,
    /// Seed for any randomized spot checks; echoed in the output.
    #[arg(long, global = true, default_value = "0")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a lattice file.
    Check { file: PathBuf },
    /// Compute the measurability n(X).
    N {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// List the 2-valued points of the lattice.
    Points { file: PathBuf },
    /// Print the universal measure table.
    Universal { file: PathBuf },
    /// Print the Boolean hull and the D map.
    Hull { file: PathBuf },
    /// Orthogonalize a sequence of elements into disjoint idempotents.
    Ortho {
        file: PathBuf,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Dimension and basis of the space of group-invariant measures.
    Invariant {
        file: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
    /// Write the product lattice of two lattice files.
    Product {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Smith normal form of the measure constraint matrix.
    Snf { file: PathBuf },
    /// List named lattices, or all lattices of a given size up to isomorphism.
    Catalog {
        #[arg(long)]
        size: Option<usize>,
    },
    /// The measurability table for all lattices of sizes 1..=6.
    Table,
}

/// Runs the CLI against the given argv, writing all output to `out`.
/// Returns the process exit code: 0 ok, 1 domain error, 2 usage error.
pub fn run(argv: &[&str], out: &mut String) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version are not usage errors
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(msg) => {
            match cli.format {
                Format::Json => {
                    let j = Json::object(vec![("error", Json::Str(msg))]);
                    let _ = writeln!(out, "{}", j.render());
                }
                _ => {
                    let _ = writeln!(out, "error: {msg}");
                }
            }
            1
        }
    }
}

fn load(path: &Path) -> Result<(String, FiniteLattice), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let file = parse_lattice(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let lat = file.build().map_err(|e| format!("{}: {e}", path.display()))?;
    let name = if file.name.is_empty() {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "lattice".to_string())
    } else {
        file.name.clone()
    };
    Ok((name, lat))
}

fn rat_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<(), String> {
    match &cli.command {
        Command::Check { file } => cmd_check(cli, file, out),
        Command::N { file, method } => cmd_n(cli, file, *method, out),
        Command::Points { file } => cmd_points(cli, file, out),
        Command::Universal { file } => cmd_universal(cli, file, out),
        Command::Hull { file } => cmd_hull(cli, file, out),
        Command::Ortho { file, elements } => cmd_ortho(cli, file, elements, out),
        Command::Invariant { file, group } => cmd_invariant(cli, file, group, out),
        Command::Product { file1, file2, out: target } => {
            cmd_product(cli, file1, file2, target, out)
        }
        Command::Snf { file } => cmd_snf(cli, file, out),
        Command::Catalog { size } => cmd_catalog(cli, *size, out),
        Command::Table => cmd_table(cli, out),
    }
}

fn cmd_check(cli: &Cli, file: &Path, out: &mut String) -> Result<(), String> {
    let (name, lat) = load(file)?;
    let boolean = lat.is_boolean();
    match cli.format {
        Format::Json => {
            let j = Json::object(vec![
                ("lattice", Json::Str(name)),
                ("elements", Json::Int(lat.size() as i64)),
                ("bottom", Json::Str(lat.name(lat.bottom()).to_string())),
                ("top", Json::Str(lat.name(lat.top()).to_string())),
                ("distributive", Json::Bool(lat.is_distributive())),
                ("complemented", Json::Bool(lat.is_complemented())),
                ("boolean", Json::Bool(boolean)),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        _ => {
            let _ = writeln!(out, "lattice: {name}");
            let _ = writeln!(out, "elements: {}", lat.size());
            let _ = writeln!(
                out,
                "bottom: {}  top: {}",
                lat.name(lat.bottom()),
                lat.name(lat.top())
            );
            let _ = writeln!(out, "distributive: {}", lat.is_distributive());
            let _ = writeln!(out, "complemented: {}", lat.is_complemented());
            let _ = writeln!(out, "boolean: {boolean}");
        }
    }
    Ok(())
}

fn n_by_method(lat: &FiniteLattice, method: Method, max_subset: usize) -> Result<usize, String> {
    Ok(match method {
        Method::Points => measurability(lat),
        Method::Groebner => {
            let gb = buchberger(&build_ideal(lat));
            standard_monomials(&gb).len()
        }
        Method::Nullspace => {
            let m = constraint_matrix(lat, max_subset).map_err(|e| e.to_string())?;
            nullspace_dimension(&m)
        }
        Method::All => unreachable!(),
    })
}

fn cmd_n(cli: &Cli, file: &Path, method: Method, out: &mut String) -> Result<(), String> {
    let (name, lat) = load(file)?;
    let max_subset = cli.max_subset_size.unwrap_or(lat.size());
    let methods: Vec<Method> = match method {
        Method::All => vec![Method::Points, Method::Groebner, Method::Nullspace],
        m => vec![m],
    };
    let labels = ["points", "groebner", "nullspace"];
    let results: Vec<(String, usize)> = methods
        .iter()
        .map(|&m| {
            let label = labels[m as usize].to_string();
            n_by_method(&lat, m, max_subset).map(|n| (label, n))
        })
        .collect::<Result<_, _>>()?;
    let n0 = results[0].1;
    if results.iter().any(|&(_, n)| n != n0) {
        let dump: Vec<String> =
            results.iter().map(|(l, n)| format!("{l}={n}")).collect();
        return Err(format!("method disagreement on {name}: {}", dump.join(" ")));
    }
    match cli.format {
        Format::Json => {
            let j = Json::object(vec![
                ("lattice", Json::Str(name)),
                ("n", Json::Int(n0 as i64)),
                (
                    "methods",
                    Json::Object(
                        results
                            .iter()
                            .map(|(l, n)| (l.clone(), Json::Int(*n as i64)))
                            .collect(),
                    ),
                ),
                ("seed", Json::Int(cli.seed as i64)),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        Format::Tsv => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|(l, n)| vec![name.clone(), l.clone(), n.to_string()])
                .collect();
            let _ = write!(out, "{}", emit_tsv(&["lattice", "method", "n"], &rows));
        }
        Format::Text => {
            for (l, n) in &results {
                let _ = writeln!(out, "{l}: {n}");
            }
            let _ = writeln!(out, "n({name}) = {n0}");
        }
    }
    Ok(())
}

fn cmd_points(cli: &Cli, file: &Path, out: &mut String) -> Result<(), String> {
    let (name, lat) = load(file)?;
    let spec = enumerate_points(&lat);
    let point_names = |i: usize| -> Vec<String> {
        spec.point(i).ones().iter().map(|&x| lat.name(x).to_string()).collect()
    };
    match cli.format {
        Format::Json => {
            let pts: Vec<Json> =
                (0..spec.len()).map(|i| Json::strings(&point_names(i))).collect();
            let j = Json::object(vec![
                ("lattice", Json::Str(name)),
                ("points", Json::Array(pts)),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        Format::Tsv => {
            let rows: Vec<Vec<String>> = (0..spec.len())
                .map(|i| vec![i.to_string(), point_names(i).join(" ")])
                .collect();
            let _ = write!(out, "{}", emit_tsv(&["point", "elements"], &rows));
        }
        Format::Text => {
            let _ = writeln!(out, "lattice: {name}");
            let _ = writeln!(out, "points: {}", spec.len());
            for i in 0..spec.len() {
                let _ = writeln!(out, "p{i}: {{{}}}", point_names(i).join(", "));
            }
        }
    }
    Ok(())
}

fn cmd_universal(cli: &Cli, file: &Path, out: &mut String) -> Result<(), String> {
    let (name, lat) = load(file)?;
    let um = universal_measure(&lat);
    match cli.format {
        Format::Json => {
            let rows: Vec<(String, Json)> = (0..lat.size())
                .map(|x| {
                    (
                        lat.name(x).to_string(),
                        Json::Array(um.row(x).iter().map(|&v| Json::Int(v)).collect()),
                    )
                })
                .collect();
            let j = Json::object(vec![
                ("lattice", Json::Str(name)),
                ("n", Json::Int(um.dimension() as i64)),
                ("pi", Json::Object(rows)),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        Format::Tsv => {
            let rows: Vec<Vec<String>> = (0..lat.size())
                .map(|x| {
                    let coords: Vec<String> =
                        um.row(x).iter().map(|v| v.to_string()).collect();
                    vec![lat.name(x).to_string(), coords.join(" ")]
                })
                .collect();
            let _ = write!(out, "{}", emit_tsv(&["element", "pi"], &rows));
        }
        Format::Text => {
            let _ = writeln!(out, "lattice: {name}  n = {}", um.dimension());
            for x in 0..lat.size() {
                let coords: Vec<String> =
                    um.row(x).iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "pi({}) = ({})", lat.name(x), coords.join(", "));
            }
        }
    }
    Ok(())
}

fn cmd_hull(cli: &Cli, file: &Path, out: &mut String) -> Result<(), String> {
    let (name, lat) = load(file)?;
    let h = hull(&lat).map_err(|e| e.to_string())?;
    match cli.format {
        Format::Json => {
            let d: Vec<(String, Json)> = (0..lat.size())
                .map(|x| {
                    (
                        lat.name(x).to_string(),
                        Json::Array(
                            h.d_points(x).iter().map(|&i| Json::Int(i as i64)).collect(),
                        ),
                    )
                })
                .collect();
            let j = Json::object(vec![
                ("lattice", Json::Str(name)),
                ("points", Json::Int(h.spectrum().len() as i64)),
                ("hull_size", Json::Int(h.hull_lattice().size() as i64)),
                ("d", Json::Object(d)),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        Format::Tsv => {
            let rows: Vec<Vec<String>> = (0..lat.size())
                .map(|x| {
                    let pts: Vec<String> =
                        h.d_points(x).iter().map(|i| i.to_string()).collect();
                    vec![lat.name(x).to_string(), pts.join(" ")]
                })
                .collect();
            let _ = write!(out, "{}", emit_tsv(&["element", "points"], &rows));
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "lattice: {name}  hull: powerset on {} points ({} elements)",
                h.spectrum().len(),
                h.hull_lattice().size()
            );
            for x in 0..lat.size() {
                let pts: Vec<String> =
                    h.d_points(x).iter().map(|i| format!("p{i}")).collect();
                let _ = writeln!(out, "D({}) = {{{}}}", lat.name(x), pts.join(", "));
            }
        }
    }
    Ok(())
}

fn cmd_ortho(
    cli: &Cli,
    file: &Path,
    elements: &[String],
    out: &mut String,
) -> Result<(), String> {
    let (name, lat) = load(file)?;
    let xs: Vec<usize> = elements
        .iter()
        .map(|e| {
            lat.index_of(e)
                .ok_or_else(|| Error::UnknownElement(e.clone()).to_string())
        })
        .collect::<Result<_, _>>()?;
    let um = universal_measure(&lat);
    let ys = orthogonalize(&um, &xs);
    match cli.format {
        Format::Json => {
            let arr: Vec<Json> = ys
                .iter()
                .map(|y| Json::Array(y.iter().map(|&v| Json::Int(v)).collect()))
                .collect();
            let j = Json::object(vec![
                ("lattice", Json::Str(name)),
                ("elements", Json::strings(elements)),
                ("idempotents", Json::Array(arr)),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        Format::Tsv => {
            let rows: Vec<Vec<String>> = ys
                .iter()
                .enumerate()
                .map(|(i, y)| {
                    let coords: Vec<String> = y.iter().map(|v| v.to_string()).collect();
                    vec![format!("y{}", i + 1), coords.join(" ")]
                })
                .collect();
            let _ = write!(out, "{}", emit_tsv(&["idempotent", "vector"], &rows));
        }
        Format::Text => {
            let _ = writeln!(out, "lattice: {name}");
            for (i, y) in ys.iter().enumerate() {
                let coords: Vec<String> = y.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "y{} = ({})", i + 1, coords.join(", "));
            }
        }
    }
    Ok(())
}

fn cmd_invariant(
    cli: &Cli,
    file: &Path,
    group: &Path,
    out: &mut String,
) -> Result<(), String> {
    let (name, lat) = load(file)?;
    let gtext = std::fs::read_to_string(group)
        .map_err(|e| format!("{}: {e}", group.display()))?;
    let gens =
        parse_group(&gtext, &lat).map_err(|e| format!("{}: {e}", group.display()))?;
    let um = universal_measure(&lat);
    let space = invariant_space(&um, &gens).map_err(|e| e.to_string())?;
    let basis = space.basis_coefficients(um.dimension());
    let basis_values: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|c| {
            make_measure(&um, c)
                .map(|m| m.values().to_vec())
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    match cli.format {
        Format::Json => {
            let orbits: Vec<Json> = space
                .orbits()
                .iter()
                .map(|o| Json::Array(o.iter().map(|&i| Json::Int(i as i64)).collect()))
                .collect();
            let basis_json: Vec<Json> = basis_values
                .iter()
                .map(|vals| {
                    Json::Object(
                        (0..lat.size())
                            .map(|x| {
                                (lat.name(x).to_string(), Json::Str(rat_str(&vals[x])))
                            })
                            .collect(),
                    )
                })
                .collect();
            let j = Json::object(vec![
                ("lattice", Json::Str(name)),
                ("generators", Json::Int(gens.len() as i64)),
                ("dimension", Json::Int(space.dimension() as i64)),
                ("orbits", Json::Array(orbits)),
                ("basis", Json::Array(basis_json)),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        Format::Tsv => {
            let rows: Vec<Vec<String>> = basis_values
                .iter()
                .enumerate()
                .map(|(i, vals)| {
                    let cells: Vec<String> = vals.iter().map(rat_str).collect();
                    vec![format!("b{}", i + 1), cells.join(" ")]
                })
                .collect();
            let _ = write!(out, "{}", emit_tsv(&["basis", "values"], &rows));
        }
        Format::Text => {
            let _ = writeln!(out, "lattice: {name}  generators: {}", gens.len());
            let _ = writeln!(out, "invariant dimension: {}", space.dimension());
            for (i, vals) in basis_values.iter().enumerate() {
                let cells: Vec<String> = (0..lat.size())
                    .map(|x| format!("{}={}", lat.name(x), rat_str(&vals[x])))
                    .collect();
                let _ = writeln!(out, "b{}: {}", i + 1, cells.join(" "));
            }
        }
    }
    Ok(())
}

fn cmd_product(
    cli: &Cli,
    file1: &Path,
    file2: &Path,
    target: &Path,
    out: &mut String,
) -> Result<(), String> {
    let (name1, lat1) = load(file1)?;
    let (name2, lat2) = load(file2)?;
    let prod = FiniteLattice::product(&lat1, &lat2).map_err(|e| e.to_string())?;
    let pname = format!("{name1}_x_{name2}");
    let pfile = LatticeFile::from_lattice(&pname, &prod);
    std::fs::write(target, serialize_lattice(&pfile))
        .map_err(|e| format!("{}: {e}", target.display()))?;
    match cli.format {
        Format::Json => {
            let j = Json::object(vec![
                ("lattice", Json::Str(pname)),
                ("elements", Json::Int(prod.size() as i64)),
                ("out", Json::Str(target.display().to_string())),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        _ => {
            let _ = writeln!(
                out,
                "wrote {pname} ({} elements) to {}",
                prod.size(),
                target.display()
            );
        }
    }
    Ok(())
}

fn cmd_snf(cli: &Cli, file: &Path, out: &mut String) -> Result<(), String> {
    let (name, lat) = load(file)?;
    let max_subset = cli.max_subset_size.unwrap_or(lat.size());
    let m = constraint_matrix(&lat, max_subset).map_err(|e| e.to_string())?;
    let snf = smith_normal_form(&m).map_err(|e| e.to_string())?;
    let diag: Vec<String> = snf.diagonal.iter().map(|d| d.to_string()).collect();
    match cli.format {
        Format::Json => {
            let j = Json::object(vec![
                ("lattice", Json::Str(name)),
                ("rank", Json::Int(snf.rank as i64)),
                ("torsion_free", Json::Bool(snf.is_torsion_free())),
                ("diagonal", Json::strings(&diag)),
            ]);
            let _ = writeln!(out, "{}", j.render());
        }
        Format::Tsv => {
            let rows: Vec<Vec<String>> = diag
                .iter()
                .enumerate()
                .map(|(i, d)| vec![i.to_string(), d.clone()])
                .collect();
            let _ = write!(out, "{}", emit_tsv(&["index", "diagonal"], &rows));
        }
        Format::Text => {
            let _ = writeln!(out, "lattice: {name}");
            let _ = writeln!(out, "rank: {}", snf.rank);
            let _ = writeln!(out, "torsion-free: {}", snf.is_torsion_free());
            let _ = writeln!(out, "diagonal: [{}]", diag.join(", "));
        }
    }
    Ok(())
}

fn cmd_catalog(cli: &Cli, size: Option<usize>, out: &mut String) -> Result<(), String> {
    let rows: Vec<Vec<String>> = match size {
        Some(k) => catalog::enumerate_all(k)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|l| {
                vec![
                    catalog::canonical_id(l),
                    l.size().to_string(),
                    measurability(l).to_string(),
                ]
            })
            .collect(),
        None => catalog::all_named()
            .iter()
            .map(|e| {
                vec![
                    e.name.clone(),
                    e.lattice.size().to_string(),
                    measurability(&e.lattice).to_string(),
                ]
            })
            .collect(),
    };
    match cli.format {
        Format::Json => {
            let arr: Vec<Json> = rows
                .iter()
                .map(|r| {
                    Json::object(vec![
                        ("lattice", Json::Str(r[0].clone())),
                        ("size", Json::Int(r[1].parse().unwrap())),
                        ("n", Json::Int(r[2].parse().unwrap())),
                    ])
                })
                .collect();
            let _ = writeln!(out, "{}", Json::Array(arr).render());
        }
        _ => {
            let _ = write!(out, "{}", emit_tsv(&["lattice", "size", "n"], &rows));
        }
    }
    Ok(())
}

fn cmd_table(cli: &Cli, out: &mut String) -> Result<(), String> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    for size in 1..=6usize {
        for l in catalog::enumerate_all(size).map_err(|e| e.to_string())? {
            rows.push(vec![
                size.to_string(),
                catalog::canonical_id(&l),
                measurability(&l).to_string(),
            ]);
        }
    }
    match cli.format {
        Format::Json => {
            let arr: Vec<Json> = rows
                .iter()
                .map(|r| {
                    Json::object(vec![
                        ("size", Json::Int(r[0].parse().unwrap())),
                        ("id", Json::Str(r[1].clone())),
                        ("n", Json::Int(r[2].parse().unwrap())),
                    ])
                })
                .collect();
            let _ = writeln!(out, "{}", Json::Array(arr).render());
        }
        _ => {
            let _ = write!(out, "{}", emit_tsv(&["size", "id", "n"], &rows));
        }
    }
    Ok(())
}

/// Convenience for tests: run and capture (exit code, output).
pub fn run_capture(argv: &[&str]) -> (i32, String) {
    let mut out = String::new();
    let code = run(argv, &mut out);
    (code, out)
}
