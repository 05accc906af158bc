use rba::hopf_dynkin::*;
use rba::rb_core::{self, Algebra, RbAlgebra};
use rba::seq_rba::StandardRba;
use std::time::Instant;

fn main() {
    let alg = StandardRba::new(9);
    let x = alg.generator();
    // time eval of one long F-word: F_0^7 (all X) vs mixed
    for n in [4usize, 5, 6] {
        let t0 = Instant::now();
        let s_fn = antipode(&HopfElem::c_gen(n as u32));
        let n_words: usize = s_fn.terms().count();
        let t1 = Instant::now();
        let v = eval_c(&s_fn, &alg);
        let t2 = Instant::now();
        let total_terms: usize = v.seq.entries().iter().map(|e| e.num_terms()).sum();
        println!("n={n}: antipode {} words in {:?}; eval in {:?}; result terms {total_terms}",
            n_words, t1-t0, t2-t1);
    }
    // size growth along one chain: F_1 * F_1 * F_1 (degree 6)
    let f1 = alg.mul(&rb_core::iterate_left(&alg, &x, 1), &x);
    let mut acc = f1.clone();
    for step in 1..=3 {
        acc = rb_core::double_product(&alg, &acc, &f1);
        let sizes: Vec<usize> = acc.entries().iter().map(|e| e.num_terms()).collect();
        println!("chain step {step}: entry sizes {:?}", sizes);
    }
}
