mod common;

use bianchi::hermitian::xi_inverse;
use common::*;

#[test]
fn transport_is_an_action_and_preserves_discriminant() {
    let mut r = rng(31);
    for d in [1, 2, 3, 5] {
        let c = ctx(d);
        for _ in 0..100 {
            let f = random_definite_form(&mut r, &c);
            let g = random_group_elem(&mut r, &c, 4);
            let h = random_group_elem(&mut r, &c, 4);
            let fg = f.act(&c, &g);
            assert_eq!(fg.discriminant(&c), f.discriminant(&c));
            assert!(fg.is_positive_definite(&c));
            assert_eq!(f.act(&c, &g.compose(&c, &h)), f.act(&c, &h).act(&c, &g));
            assert_eq!(fg.xi(&c).unwrap(), g.apply(&c, &f.xi(&c).unwrap()));
        }
    }
}

#[test]
fn xi_round_trip() {
    let mut r = rng(32);
    for d in [1, 2, 3, 5, 7] {
        let c = ctx(d);
        for _ in 0..100 {
            let f = random_definite_form(&mut r, &c);
            let p = f.xi(&c).unwrap();
            let inv = xi_inverse(&c, &p);
            assert_eq!(inv.discriminant(d), p.s);
            let back = inv.to_integral(&c).unwrap();
            // back is the primitive multiple of f, so it has the same point
            assert_eq!(back.xi(&c).unwrap(), p);
            assert_eq!(f.a % back.a, 0);
        }
    }
}

#[test]
fn height_is_never_attained_by_b_alone() {
    let mut r = rng(33);
    for d in [1, 2, 3, 5] {
        let c = ctx(d);
        for _ in 0..500 {
            let f = random_definite_form(&mut r, &c);
            let nb = c.norm(f.b);
            assert!(nb <= f.a * f.a || nb <= f.dd * f.dd, "{f}");
            assert!(f.dd > 0);
        }
    }
}

#[test]
fn reduced_forms_are_fixed() {
    let mut r = rng(34);
    for d in [1, 2, 3, 5] {
        let c = ctx(d);
        for _ in 0..50 {
            let f = random_definite_form(&mut r, &c);
            let red = f.reduce(&c).unwrap();
            let again = red.f_red.reduce(&c).unwrap();
            assert!(again.certificate.gamma.is_identity());
            assert_eq!(again.f_red, red.f_red);
        }
    }
}
