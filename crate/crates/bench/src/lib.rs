//! Program families used by the benchmarks.

use dlp_engine::{parse_dlp, Dlp};

/// `n` independent atoms, each with an even loop `a_i :- not b_i. b_i :- not a_i.`
/// in the first component and a fact update `a_i.` in the second.
pub fn even_loops(n: usize) -> Dlp {
    let mut text = String::new();
    for i in 0..n {
        text.push_str(&format!("a{i} :- not b{i}.\nb{i} :- not a{i}.\n"));
    }
    text.push_str("#update.\n");
    for i in 0..n {
        text.push_str(&format!("a{i}.\n"));
    }
    parse_dlp(&text).expect("generated text parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use dlp_engine::{models, EvalOptions, SemanticsId};

    #[test]
    fn the_update_settles_every_loop() {
        let dlp = even_loops(3);
        assert_eq!(dlp.len(), 2);
        assert_eq!(dlp.rule_count(), 9);
        for semantics in [SemanticsId::Rd, SemanticsId::Ws, SemanticsId::Erd, SemanticsId::Ews] {
            let found = models(&dlp, semantics, &EvalOptions::default()).unwrap();
            assert_eq!(found.render(), vec!["{a0, a1, a2}"], "{semantics}");
        }
    }
}
