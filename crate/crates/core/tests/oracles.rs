//! Library results against closed-form counts.

use relhom::brute::modules_up_to;
use relhom::complexes::Complex;
use relhom::ext::{ext1_complex, ext1_complex_order_dual, ext1_module};
use relhom::zm::{FinModule, HomSpace, Ring};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn hom_order(a: &[u64], b: &[u64]) -> u128 {
    a.iter().flat_map(|&x| b.iter().map(move |&y| gcd(x, y) as u128)).product()
}

// Z/m -a-> Z/m -(m/a)-> Z/m -a-> Z/m resolves Z/a
fn ext_order(m: u64, a: &[u64], b: &[u64]) -> u128 {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| (gcd(m / x, y) * gcd(x, y) / y) as u128))
        .product()
}

fn rings() -> Vec<Ring> {
    [2, 4, 6, 8, 9, 12].iter().map(|&m| Ring::new(m).unwrap()).collect()
}

#[test]
fn hom_orders_match_gcd_products() {
    for r in rings() {
        let ms = modules_up_to(r, 2);
        for a in &ms {
            for b in &ms {
                let h = HomSpace::new(a, b);
                assert_eq!(h.module().order(), hom_order(a.factors(), b.factors()), "Hom({a}, {b}) over {r}");
            }
        }
    }
}

#[test]
fn module_ext_orders_match_resolution() {
    for r in rings() {
        let ms = modules_up_to(r, 2);
        for a in &ms {
            for b in &ms {
                let e = ext1_module(a, b);
                assert_eq!(e.order(), ext_order(r.modulus(), a.factors(), b.factors()), "Ext({a}, {b}) over {r}");
                assert_eq!(e.witness().is_some(), e.order() > 1);
            }
        }
    }
}

#[test]
fn ext_of_two_by_two_over_four() {
    let r = Ring::new(4).unwrap();
    let two = FinModule::new(r, vec![2]).unwrap();
    assert_eq!(ext1_module(&two, &two).order(), 2);
}

#[test]
fn free_modules_have_no_ext() {
    for r in rings() {
        let f = FinModule::free(r, 2);
        for b in modules_up_to(r, 2) {
            assert_eq!(ext1_module(&f, &b).order(), 1);
            assert_eq!(ext1_module(&b, &f).order(), 1);
        }
    }
}

#[test]
fn disk_ext_reduces_to_module_ext() {
    let r = Ring::new(4).unwrap();
    let two = FinModule::new(r, vec![2]).unwrap();
    let four = FinModule::new(r, vec![4]).unwrap();
    let cs = [
        Complex::sphere(&two, 0),
        Complex::sphere(&two, 1),
        Complex::disk(&two, 0),
        Complex::disk(&four, -1),
    ];
    for a in [&two, &four] {
        for n in -1..=1 {
            let d = Complex::disk(a, n);
            for c in &cs {
                let expected = ext1_module(a, &c.module(n)).order();
                assert_eq!(ext1_complex(&d, c).order(), expected, "Ext(D^{n}({a}), {c})");
                assert_eq!(ext1_complex_order_dual(&d, c), expected);
            }
        }
    }
}
