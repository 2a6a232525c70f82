use std::ffi::{CStr, CString};
use std::ptr;

use dcc_ffi::*;

const T61: &str = r#"{"partition":{"n":10,"blocks":[[1],[2,3,9],[4],[5,6],[7],[8],[10]]},
"decoration":[{"kind":"point","point":{"kind":"marked","segment":1,"index":0}},{"kind":"right"},
{"kind":"point","point":{"kind":"marked","segment":3,"index":0}},{"kind":"left"},{"kind":"right"},
{"kind":"point","point":{"kind":"marked","segment":6,"index":0}},{"kind":"left"},{"kind":"left"},
{"kind":"point","point":{"kind":"marked","segment":9,"index":0}},{"kind":"left"}]}"#;

fn marked(segment: u32, index: i64) -> DcPoint {
    DcPoint {
        kind: DcPointKind::Marked,
        segment,
        index,
    }
}

fn acc(segment: u32) -> DcPoint {
    DcPoint {
        kind: DcPointKind::Acc,
        segment,
        index: 0,
    }
}

fn arc(a: DcPoint, b: DcPoint) -> DcArc {
    DcArc { a, b }
}

fn last_error() -> String {
    let p = dc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn load(json: &str) -> *mut DcTStructure {
    let c = CString::new(json).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { dc_tstructure_from_json(c.as_ptr(), &mut t) },
        DcStatus::Ok
    );
    t
}

#[test]
fn hom_and_ext() {
    let x = arc(marked(1, 0), marked(1, 3));
    let y = arc(marked(1, 1), marked(1, 4));
    let mut d = 9u8;
    unsafe {
        assert_eq!(dc_hom_dim(&x, &y, &mut d), DcStatus::Ok);
        assert_eq!(d, 1);
        assert_eq!(dc_ext1_dim(&x, &x, &mut d), DcStatus::Ok);
        assert_eq!(d, 0);
    }
    assert!(dc_last_error().is_null());
}

#[test]
fn errors_are_reported() {
    let bad = arc(marked(1, 0), marked(1, 1));
    let y = arc(marked(1, 1), marked(1, 4));
    let mut d = 0u8;
    unsafe {
        assert_eq!(dc_hom_dim(&bad, &y, &mut d), DcStatus::NotAnArc);
        assert!(last_error().contains("not an arc"));
        assert_eq!(dc_hom_dim(ptr::null(), &y, &mut d), DcStatus::NullPointer);
        assert_eq!(dc_hom_dim(&y, &y, ptr::null_mut()), DcStatus::NullPointer);
    }
    let crossing = CString::new(
        r#"{"partition":{"n":4,"blocks":[[1,3],[2,4]]},"decoration":[{"kind":"left"},{"kind":"left"},{"kind":"left"},{"kind":"left"}]}"#,
    )
    .unwrap();
    let mut t = ptr::null_mut();
    let status = unsafe { dc_tstructure_from_json(crossing.as_ptr(), &mut t) };
    assert_eq!(status, DcStatus::InvalidValue);
    assert!(last_error().contains("non-crossing"));
    assert!(t.is_null());
    let garbage = CString::new("{").unwrap();
    assert_eq!(
        unsafe { dc_tstructure_from_json(garbage.as_ptr(), &mut t) },
        DcStatus::Malformed
    );
}

#[test]
fn tstructure_handle() {
    let t = load(T61);
    let mut n = 0;
    let mut member = false;
    let mut block = 0;
    unsafe {
        assert_eq!(dc_tstructure_n(t, &mut n), DcStatus::Ok);
        assert_eq!(n, 10);
        let x = arc(acc(2), acc(9));
        assert_eq!(
            dc_completion_member(t, &x, &mut member, &mut block),
            DcStatus::Ok
        );
        assert!(member);
        assert_eq!(block, 2);

        let out_of_range = arc(marked(11, 0), marked(1, 0));
        assert_eq!(
            dc_aisle_member(t, &out_of_range, 0, &mut member),
            DcStatus::SegmentOutOfRange
        );

        let mut reduced = ptr::null_mut();
        assert_eq!(dc_largest_aisle(t, &mut reduced), DcStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(dc_tstructure_to_json(reduced, &mut json), DcStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(text.contains(r#""partition""#));
        dc_string_free(json);
        dc_tstructure_free(reduced);
        dc_tstructure_free(t);
    }
}

#[test]
fn kreweras_json() {
    let p = CString::new(r#"{"n":10,"blocks":[[1],[2,3,9],[4],[5,6],[7],[8],[10]]}"#).unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(dc_kreweras_json(p.as_ptr(), &mut out), DcStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        dc_string_free(out);
        assert_eq!(text, r#"{"n":10,"blocks":[[1,9,10],[2],[3,4,6,7,8],[5]]}"#);
    }
}

#[test]
fn suspension_round_trip() {
    let x = arc(marked(2, 0), acc(1));
    let mut y = x;
    unsafe {
        assert_eq!(dc_suspend(&x, 3, &mut y), DcStatus::Ok);
        let mut back = y;
        assert_eq!(dc_suspend(&y, -3, &mut back), DcStatus::Ok);
        let mut d = 0;
        assert_eq!(dc_hom_completed_dim(&x, &back, &mut d), DcStatus::Ok);
        assert_eq!(d, 1);
    }
}

#[test]
fn header_is_generated() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/dcc.h")).unwrap();
    for name in [
        "dc_hom_dim",
        "dc_tstructure_free",
        "dc_last_error",
        "DC_STATUS_NOT_AN_ARC",
        "typedef struct DcTStructure",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
