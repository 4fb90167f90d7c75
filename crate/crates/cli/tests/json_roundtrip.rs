use polyresolve::gen;
use polyresolve::io::{to_json, Certificate, CertificateFile, GraphFile, Instance, InstanceFile};
use polyresolve_core::graph::Kind;
use polyresolve_core::oddcover::{odd_cover_eulerian, path_odd_cover_general};
use polyresolve_core::resolve::resolve;
use proptest::prelude::*;

fn back<T: serde::de::DeserializeOwned>(text: &str) -> T {
    serde_json::from_str(text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn instance_round_trips(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let (p, q) = gen::random_instance(30, 10, &mut r);
        let inst = Instance { p, q, bound: Some(3), family: None };
        let again = back::<InstanceFile>(&to_json(&InstanceFile::from_instance(&inst))).validate().unwrap();
        prop_assert_eq!(again, inst);
    }

    #[test]
    fn resolution_certificate_round_trips(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let (p, q) = gen::random_instance(20, 8, &mut r);
        let taus = resolve(&p, &q).unwrap().taus;
        let again = back::<CertificateFile>(&to_json(&CertificateFile::from_resolution(&taus))).validate().unwrap();
        prop_assert_eq!(again, Certificate::Resolution(taus));
    }

    #[test]
    fn graph_and_cover_round_trip(seed in any::<u64>(), n in 1usize..14) {
        let mut r = gen::rng(seed);
        let g = gen::random_graph(n, 0.4, &mut r);
        let again = back::<GraphFile>(&to_json(&GraphFile::from_graph(&g))).validate().unwrap();
        prop_assert_eq!(&again, &g);
        let cert = if g.is_eulerian() { odd_cover_eulerian(&g, Kind::Cycle) } else { path_odd_cover_general(&g) }.unwrap();
        let again = back::<CertificateFile>(&to_json(&CertificateFile::from_cover(&cert))).validate().unwrap();
        prop_assert_eq!(again, Certificate::Cover(cert));
    }
}
