use latmeas_cli::run_capture;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn check_n5_text() {
    let (code, out) = run_capture(&["latmeas", "check", &data("n5.lat")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("lattice: N5"));
    assert!(out.contains("elements: 5"));
    assert!(out.contains("boolean: false"));
}

#[test]
fn check_powerset_is_boolean() {
    let (code, out) =
        run_capture(&["latmeas", "check", &data("powerset2.lat"), "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"boolean\":true"));
}

#[test]
fn check_bad_file_is_domain_error() {
    let (code, out) = run_capture(&["latmeas", "check", &data("bad.lat")]);
    assert_eq!(code, 1);
    assert!(out.contains("error:"));
    assert!(out.contains("line 3"));
}

#[test]
fn error_json_is_machine_readable() {
    let (code, out) =
        run_capture(&["latmeas", "check", &data("bad.lat"), "--format", "json"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("{\"error\":"), "{out}");
}

#[test]
fn n_m3_all_methods() {
    let (code, out) = run_capture(&["latmeas", "n", &data("m3.lat")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("points: 0"));
    assert!(out.contains("groebner: 0"));
    assert!(out.contains("nullspace: 0"));
    assert!(out.contains("n(M3) = 0"));
}

#[test]
fn n_n5_equals_n_m2() {
    let (c1, o1) =
        run_capture(&["latmeas", "n", &data("n5.lat"), "--format", "json"]);
    let (c2, o2) =
        run_capture(&["latmeas", "n", &data("m2.lat"), "--format", "json"]);
    assert_eq!((c1, c2), (0, 0));
    assert!(o1.contains("\"n\":2"), "{o1}");
    assert!(o2.contains("\"n\":2"), "{o2}");
}

#[test]
fn n_single_method_tsv() {
    let (code, out) = run_capture(&[
        "latmeas",
        "n",
        &data("chain2.lat"),
        "--method",
        "nullspace",
        "--format",
        "tsv",
    ]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out, "lattice\tmethod\tn\nchain2\tnullspace\t2\n");
}

#[test]
fn points_lists_prime_filters() {
    let (code, out) = run_capture(&["latmeas", "points", &data("n5.lat")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("points: 2"));
    // the point picking out the chain side contains both a and b
    assert!(out.lines().any(|l| l.contains("a, b, 1")));
    assert!(out.lines().any(|l| l.contains("c, 1")));
}

#[test]
fn universal_chain_rows_are_prefix_vectors() {
    let (code, out) =
        run_capture(&["latmeas", "universal", &data("chain2.lat"), "--format", "tsv"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out, "element\tpi\n0\t0 0\nm\t0 1\n1\t1 1\n");
}

#[test]
fn hull_of_m3_collapses() {
    let (code, out) =
        run_capture(&["latmeas", "hull", &data("m3.lat"), "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"points\":0"));
    assert!(out.contains("\"hull_size\":1"));
    assert!(out.contains("\"x1\":[]"));
}

#[test]
fn ortho_outputs_disjoint_idempotents() {
    let (code, out) =
        run_capture(&["latmeas", "ortho", &data("n5.lat"), "a", "c"]);
    assert_eq!(code, 0, "{out}");
    let vecs: Vec<Vec<i64>> = out
        .lines()
        .filter(|l| l.starts_with('y'))
        .map(|l| {
            l.split('(')
                .nth(1)
                .unwrap()
                .trim_end_matches(')')
                .split(", ")
                .map(|t| t.parse().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(vecs.len(), 2);
    let dot: i64 = vecs[0].iter().zip(&vecs[1]).map(|(a, b)| a * b).sum();
    assert_eq!(dot, 0);
}

#[test]
fn ortho_unknown_element() {
    let (code, out) = run_capture(&["latmeas", "ortho", &data("n5.lat"), "zz"]);
    assert_eq!(code, 1);
    assert!(out.contains("unknown element"));
}

#[test]
fn invariant_swap_on_powerset2() {
    let (code, out) = run_capture(&[
        "latmeas",
        "invariant",
        &data("powerset2.lat"),
        "--group",
        &data("p2swap.grp"),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0, "{out}");
    // swapping the two atoms leaves only the cardinality line
    assert!(out.contains("\"dimension\":1"), "{out}");
    assert!(out.contains("\"top\":\"2\""), "{out}");
}

#[test]
fn product_roundtrip() {
    let dir = std::env::temp_dir().join("latmeas-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("prod.lat");
    let target_s = target.to_string_lossy().into_owned();
    let (code, out) = run_capture(&[
        "latmeas",
        "product",
        &data("chain2.lat"),
        &data("chain2.lat"),
        "-o",
        &target_s,
    ]);
    assert_eq!(code, 0, "{out}");
    // n is additive over products: chain(2) x chain(2) has n = 4
    let (code2, out2) = run_capture(&["latmeas", "n", &target_s, "--format", "json"]);
    assert_eq!(code2, 0, "{out2}");
    assert!(out2.contains("\"n\":4"), "{out2}");
}

#[test]
fn snf_is_torsion_free() {
    let (code, out) =
        run_capture(&["latmeas", "snf", &data("n5.lat"), "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"torsion_free\":true"), "{out}");
}

#[test]
fn catalog_named_entries() {
    let (code, out) = run_capture(&["latmeas", "catalog"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("m3\t5\t0"));
    assert!(out.contains("hexagon9\t7\t2"));
    assert!(out.contains("x7\t8\t2"));
}

#[test]
fn catalog_sized() {
    let (code, out) = run_capture(&["latmeas", "catalog", "--size", "5"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 6); // header + five lattices
}

#[test]
fn table_has_25_rows() {
    let (code, out) = run_capture(&["latmeas", "table"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 26); // header + 25 lattices
}

#[test]
fn output_is_deterministic() {
    let argv = ["latmeas", "table", "--format", "json"];
    let (c1, o1) = run_capture(&argv);
    let (c2, o2) = run_capture(&argv);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
}

#[test]
fn usage_error_exits_2() {
    let (code, _) = run_capture(&["latmeas", "frobnicate"]);
    assert_eq!(code, 2);
    let (code, _) = run_capture(&["latmeas", "n"]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_0() {
    let (code, out) = run_capture(&["latmeas", "--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("latmeas"));
}
