//! Inputs shared by the benchmarks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use uti_core::retrieval::Record;
use uti_core::UncertainInterval;

/// Random valid intervals within `[0, span]`, reproducible from `seed`.
pub fn random_intervals(n: usize, span: f64, seed: u64) -> Vec<UncertainInterval> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..span));
            v.sort_by(f64::total_cmp);
            // swapping the middle pair leaves some intervals without a reliable part
            if rng.gen_bool(0.3) {
                v.swap(1, 2);
            }
            UncertainInterval::from_days(v[0], v[1], v[2], v[3]).expect("sorted bounds")
        })
        .collect()
}

pub fn records(n: usize, seed: u64) -> Vec<Record<usize>> {
    random_intervals(n, 1_000_000.0, seed)
        .into_iter()
        .enumerate()
        .map(|(i, w)| Record::new(i, w))
        .collect()
}

/// A chain of `n` resources, each beginning where the next one ends.
pub fn reference_chain(n: usize) -> String {
    let mut s = String::from(
        "@prefix hutime: <http://resource.hutime.org/ontology/> .\n\
         @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\
         @prefix ex: <http://example.org/> .\n",
    );
    for i in 0..n {
        s.push_str(&format!(
            "ex:w{i} a hutime:UncertainTimeInterval ;\n    hutime:hasRangeOfBeginning ex:w{} ;\n    \
             hutime:hasReliableJdEnd \"{}.5\"^^xsd:double ;\n    hutime:hasPossibleJdEnd \"{}.5\"^^xsd:double .\n",
            i + 1,
            2_000_000 + n - i,
            2_000_001 + n - i
        ));
    }
    s.push_str(&format!(
        "ex:w{n} a hutime:UncertainTimeInterval ;\n    hutime:hasPossibleJdBeginning \"1000000.5\"^^xsd:double ;\n    \
         hutime:hasReliableJdBeginning \"1000001.5\"^^xsd:double ;\n    \
         hutime:hasReliableJdEnd \"1000002.5\"^^xsd:double ;\n    hutime:hasPossibleJdEnd \"1000003.5\"^^xsd:double .\n"
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_resolves() {
        let doc = uti_core::parse_turtle(&reference_chain(50)).unwrap();
        let report = uti_core::resolve_all(&doc);
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        assert_eq!(report.intervals.len(), 51);
    }
}
