//! Values computed once by independent brute-force scripts and frozen here.

use isotropy::boxfree::{self, PipelineConfig};
use isotropy::grassmann::{sigma_profile, DEFAULT_CAP};
use isotropy::isotropy::{self as iso, FieldMinMode};
use isotropy::{rank, Elem, Field, Tensor};
use num_bigint::BigUint;

fn field(q: u64) -> Field {
    Field::with_order(q).unwrap()
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

#[test]
fn plane_pair_strata() {
    assert_eq!(sigma_profile(&field(2), 4, 2, DEFAULT_CAP).unwrap(), big(&[560, 630, 35]));
    assert_eq!(sigma_profile(&field(3), 4, 2, DEFAULT_CAP).unwrap(), big(&[10530, 6240, 130]));
}

#[test]
fn smallest_alternating_indices_over_f2() {
    for n in [3, 4] {
        let r = iso::alpha_field_alt(&field(2), n, 2, 1, 1, FieldMinMode::Exhaustive { cap: 1 << 10 }, DEFAULT_CAP).unwrap();
        assert!(r.exact && r.searches_complete);
        assert_eq!(r.value, 2, "n = {n}");
    }
}

#[test]
fn incidence_points() {
    let f2 = field(2);
    assert_eq!(iso::count_i1_points(&f2, 3, 2, 1, 1).unwrap(), BigUint::from(49u32));
    assert_eq!(iso::count_i1_points(&f2, 3, 2, 1, 2).unwrap(), BigUint::from(21u32));
    assert_eq!(iso::count_j1_points(&f2, 3, 2, 1).unwrap(), BigUint::from(1519u32));
}

#[test]
fn identity_form_zero_set() {
    let c = [1, 0, 0, 1].iter().map(|&i| Elem::from_index(i)).collect();
    let t = Tensor::new(&field(2), 2, 2, 1, c).unwrap();
    assert_eq!(rank::zero_count(&t, DEFAULT_CAP).unwrap(), BigUint::from(10u32));
}

#[test]
fn plane_tuples_of_the_seed_42_tensor_over_extensions() {
    let t = Tensor::random(&field(2), 3, 2, 1, 42).unwrap();
    let idx: Vec<u32> = t.coeffs().iter().map(|e| e.index()).collect();
    assert_eq!(idx, [1, 1, 0, 0, 0, 0, 1, 0, 1]);
    assert_eq!(iso::count_dt(&t, DEFAULT_CAP).unwrap(), BigUint::from(3u32));
    let t4 = t.base_change(&field(4)).unwrap();
    assert_eq!(iso::count_dt(&t4, DEFAULT_CAP).unwrap(), BigUint::from(5u32));
}

#[test]
fn box_certificate_seed_42() {
    let run = boxfree::run_pipeline(
        &field(2),
        3,
        2,
        1,
        PipelineConfig {
            seed: 42,
            ..PipelineConfig::default()
        },
    )
    .unwrap();
    let c = &run.certificate;
    assert_eq!(
        (c.dt_size.as_str(), c.edge_count_before.as_str(), c.part_size.as_str(), c.trials.as_str()),
        ("35", "105", "15", "6")
    );
    assert_eq!((c.dt_bound_rhs.as_str(), c.edge_bound_rhs.as_str()), ("76", "96"));
}
