use cwq::lattices::*;
use cwq::arith::*;
use cwq::intpoly::*;
fn main() {
    let f = IntPolynomial::from_i64(&[1, 0, -1, -1, -1, 0, 1]);
    let comp = companion_matrix(&f).unwrap();
    let b = QMat::from_rows(comp.iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect());
    use std::time::Instant;
    let t0 = Instant::now();
    let l = stable_lattice(&b).unwrap();
    println!("companion case: {:?}", t0.elapsed());
    assert!(verify_stable_integral(&l, &b, None));
    // conjugated
    let s = QMat::from_rows(vec![
        vec![rat_i(1), rat_i(2), rat_i(0), rat_i(1), rat_i(0), rat_i(0)],
        vec![rat_i(0), rat_i(1), rat_i(1), rat_i(0), rat_i(2), rat_i(0)],
        vec![rat_i(0), rat_i(0), rat_i(1), rat_i(1), rat_i(0), rat_i(1)],
        vec![rat_i(1), rat_i(0), rat_i(0), rat_i(1), rat_i(1), rat_i(0)],
        vec![rat_i(0), rat_i(1), rat_i(0), rat_i(0), rat_i(1), rat_i(2)],
        vec![rat_i(0), rat_i(0), rat_i(1), rat_i(0), rat_i(0), rat_i(1)],
    ]);
    println!("det s = {}", s.det());
    let a = s.mul(&b.mul(&s.inverse().unwrap()));
    let t0 = Instant::now();
    let l = stable_lattice(&a).unwrap();
    println!("conjugated case: {:?}", t0.elapsed());
    assert!(verify_stable_integral(&l, &a, None));
    println!("ok");
}
