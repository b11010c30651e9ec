//! A lower bound by sampling: no one-star expression of size ≤ 9 contains
//! both chain words and avoids every word whose chains are all odd.

use sizegame::expr::{parse_expr, Alphabet, Dialect, Word};
use sizegame::langs::{certify_lower_bound, even_chain_member, make_lnk, CegisConfig, CegisOutcome};
use sizegame::oracle::EnumSpec;

fn main() {
    let sigma = Alphabet::parse("ab").unwrap();
    let a = make_lnk(2, 2).unwrap();
    let outside = |w: &Word| !even_chain_member(w, 2);

    let spec = EnumSpec::new(sigma.clone(), Dialect::Resf, 9, Some(1));
    match certify_lower_bound(&a, &outside, &spec, &CegisConfig::default()).unwrap() {
        CegisOutcome::Certified(cert) => {
            println!("{}", CegisOutcome::Certified(cert.clone()));
            println!("{}", serde_json::to_string_pretty(&cert).unwrap());
        }
        other => println!("{other}"),
    }

    // two stars are enough
    let spec = EnumSpec::new(sigma.clone(), Dialect::Re, 13, Some(2));
    println!("{}", certify_lower_bound(&a, &outside, &spec, &CegisConfig::default()).unwrap());
    let e = parse_expr("(a|bb)*|(aa|b)*", &sigma).unwrap();
    println!("{e}: size {}, {} stars", e.size(), e.star_count());
}
