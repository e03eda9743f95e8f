use sra_core::job::JobSpec;
use sra_core::selftest::{self, Catalog};
use sra_core::wreath::deform::compare_with_hyperplanes;
use sra_core::wreath::element::compose;
use sra_core::wreath::{first_order_deformation, DeformationParameter};
use sra_core::Error;

fn job(text: &str) -> JobSpec {
    JobSpec::from_json(text).unwrap()
}

#[test]
fn scalar_job_end_to_end() {
    let m =
        job(r#"{"ell":2,"lambda":["0","2"],"composition":[2],"partitions":[[2]],"roots":[[1,0]]}"#)
            .build()
            .unwrap();
    assert_eq!(m.dim(), 1);
    let def = first_order_deformation(&m, &DeformationParameter::base(&m)).unwrap();
    let out = serde_json::to_value(&def).unwrap();
    assert_eq!(out["tangent_basis"], serde_json::json!([["1", "-1"]]));
    assert_eq!(out["codimension"], 1);
}

#[test]
fn wide_simple_has_the_predicted_dimension() {
    for (w, dim_w) in [("[[2]]", 1), ("[[1,1]]", 1)] {
        let text = format!(
            r#"{{"ell":2,"lambda":["-2","4"],"composition":[2],"partitions":{w},"roots":[[2,1]]}}"#
        );
        let m = job(&text).build().unwrap();
        assert_eq!(m.dim(), 9 * dim_w);
        let def = first_order_deformation(&m, &DeformationParameter::base(&m)).unwrap();
        let cmp = compare_with_hyperplanes(&m, &def);
        assert!(cmp.same_tangent_space && cmp.codimension_equals_r);
    }
}

#[test]
fn permutation_action_is_multiplicative() {
    let m = job(
        r#"{"ell":4,"lambda":["0","2","0","2"],"composition":[2,1],"partitions":[[1,1],[1]],
            "roots":[[1,0,0,0],[0,0,1,0]]}"#,
    )
    .build()
    .unwrap();
    let perms = [vec![1, 2, 0], vec![0, 2, 1], vec![2, 1, 0]];
    for s in &perms {
        for t in &perms {
            assert_eq!(
                m.rho_perm(&compose(s, t)),
                m.rho_perm(s).mul(&m.rho_perm(t))
            );
        }
    }
}

#[test]
fn adjacent_roots_at_three_vertices_violate_the_hypothesis() {
    let spec = job(
        r#"{"ell":3,"lambda":["0","0","3"],"composition":[1,1],"partitions":[[1],[1]],
            "roots":[[1,0,0],[0,1,0]]}"#,
    );
    assert!(matches!(
        spec.build(),
        Err(Error::NonzeroExt { dim: 1, .. })
    ));
    let m = spec.build_unchecked().unwrap();
    let def = first_order_deformation(&m, &DeformationParameter::base(&m)).unwrap();
    // k is forced to vanish to first order
    assert!(def.tangent_basis.is_empty());
    assert_eq!(def.codimension, 3);
}

#[test]
fn reports_serialize_deterministically() {
    let cat = Catalog::builtin();
    let a = serde_json::to_string(&selftest::run_suite("trace", &cat, 1).unwrap()).unwrap();
    let b = serde_json::to_string(&selftest::run_suite("trace", &cat, 1).unwrap()).unwrap();
    assert_eq!(a, b);
}
