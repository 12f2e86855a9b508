use rinf_core::ring::{FieldSpec, Flavor};
use rinf_core::twisted::{certify_separation, example_map, CaseTag, Verdict};
use rinf_core::wire;

#[test]
fn every_case_certifies_over_f3() {
    let f = FieldSpec::of_order(3).unwrap();
    for tag in CaseTag::ALL {
        for flavor in [Flavor::Poly, Flavor::Laurent] {
            let phi = example_map(tag, &f, flavor, 3).unwrap();
            let cert = certify_separation(&phi, tag, &[1, 2, 3]).unwrap();
            assert_eq!(cert.verdict, Verdict::Separated, "{tag:?} {flavor:?}");
            let json = wire::certificate_to_json(&cert);
            assert_eq!(json["verdict"], "separated");
            assert_eq!(json["case"], tag.as_str());
        }
    }
}

#[test]
fn unknown_case_names_are_rejected() {
    assert!("bogus".parse::<CaseTag>().is_err());
    for tag in CaseTag::ALL {
        assert_eq!(tag.as_str().parse::<CaseTag>().unwrap(), tag);
    }
}
