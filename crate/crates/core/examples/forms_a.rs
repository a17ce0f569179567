//! Intersection forms: classification of the parametric family and Novikov additivity.

use forge::forms::{classify_parametric, inertia, novikov_sum, parametric_block, parametric_reduction, BilinearForm, Ring};

fn main() {
    let tail = BilinearForm::diagonal(Ring::Z, &[-1, -1, -1, -1]);
    for n in -3..=3 {
        let block = parametric_block(n);
        let reduced = block.transform(&parametric_reduction(n));
        let class = classify_parametric((n.rem_euclid(2)) as u8, &tail).expect("indefinite unimodular");
        println!("n = {n:>2}: reduces to {:?}, whole form is {}", reduced.matrix().to_rows(), class.standard_name);
    }
    // the complementary piece D carries <0> + 4<-1>
    let d = BilinearForm::diagonal(Ring::Z, &[0, -1, -1, -1, -1]);
    let a = novikov_sum(&[(1, 0), (d.rank() as i64, inertia(&d).unwrap().signature())]);
    println!("(b2, sigma) of A = {a:?}");
}
