//! The two Pochhammer multinomial identities behind the Dirichlet moments.

use dirmix::exact::ratio;
use dirmix::mixture::{verify_lemma1, verify_lemma2, DirichletParams};

fn main() -> dirmix::Result<()> {
    for n in 2..=6 {
        let res = verify_lemma1(n, 12);
        println!("lemma1 n = {n}: {:?}", res.status);
    }
    let a = DirichletParams::new(vec![ratio(1, 3), ratio(5, 2), ratio(7, 4)])?;
    let res = verify_lemma2(&a, 10);
    println!("lemma2 a = {}: {:?}", res.params["a"], res.status);
    println!("{}", serde_json::to_string_pretty(&res)?);
    Ok(())
}
