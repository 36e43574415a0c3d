use cyclohecke::cache::{CacheOutcome, OpCache};
use cyclohecke::hecke::{AlgebraContext, Parameters};

fn same_structure(a: &AlgebraContext, b: &AlgebraContext) {
    assert_eq!(a.dim(), b.dim());
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let x = a.multiply(&a.basis_element(i), &a.basis_element(j)).unwrap();
            let y = b.multiply(&b.basis_element(i), &b.basis_element(j)).unwrap();
            assert_eq!(a.to_dense(&x), b.to_dense(&y));
        }
    }
}

#[test]
fn round_trip_rational_and_cyclotomic() {
    let dir = tempfile::tempdir().unwrap();
    let cache = OpCache::new(dir.path());
    for (n, r, params) in [
        (2, 2, Parameters::rational(3, &[5, 7]).unwrap()),
        (3, 1, Parameters::root_of_unity(3, &[0])),
        (2, 2, Parameters::root_of_unity(4, &[1, 3])),
    ] {
        let (built, outcome) = cache.load_or_build(n, r, params.clone()).unwrap();
        assert_eq!(outcome, CacheOutcome::Built);
        let path = cache.path_for(n, r, &params);
        assert!(path.file_name().unwrap().to_str().unwrap().starts_with(&format!("ak-n{n}-r{r}-")));
        let (loaded, outcome) = cache.load_or_build(n, r, params.clone()).unwrap();
        assert_eq!(outcome, CacheOutcome::Hit);
        same_structure(&built, &loaded);
        assert!(loaded.check_relations(3).unwrap().passed());
        let fresh = AlgebraContext::new(n, r, params).unwrap();
        same_structure(&fresh, &loaded);
    }
}

#[test]
fn corrupt_file_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = OpCache::new(dir.path());
    let params = Parameters::rational(2, &[3]).unwrap();
    std::fs::write(cache.path_for(2, 1, &params), "{ not json").unwrap();
    let (_, outcome) = cache.load_or_build(2, 1, params.clone()).unwrap();
    assert_eq!(outcome, CacheOutcome::Built);
    let (_, outcome) = cache.load_or_build(2, 1, params).unwrap();
    assert_eq!(outcome, CacheOutcome::Hit);
}

#[test]
fn symbolic_contexts_bypass_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let (_, outcome) = OpCache::new(dir.path()).load_or_build(2, 1, Parameters::generic(1)).unwrap();
    assert_eq!(outcome, CacheOutcome::Bypassed);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}
