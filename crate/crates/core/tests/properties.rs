use proptest::prelude::*;

use omconf::basic::BasicRelation;
use omconf::cli::{parse_distribution, parse_relation, render_relation, DistributionFile};
use omconf::construct;
use omconf::induce;
use omconf::{
    Event, Partition, PossibilityDistribution, ProbabilityDistribution, Rational, StateSpace,
};

fn space(n: usize) -> StateSpace {
    StateSpace::alphabetic(n).unwrap()
}

/// Levels on 1..=5 states with at least one positive entry.
fn levels() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..4, 1..=5)
        .prop_filter("some state possible", |l| l.iter().any(|&x| x > 0))
}

fn poss(e: Event, levels: &[u32]) -> u32 {
    e.states().map(|s| levels[s]).max().unwrap_or(0)
}

proptest! {
    #[test]
    fn possibility_matches_the_max_oracle(levels in levels()) {
        let s = space(levels.len());
        let rel = induce::possibility(&PossibilityDistribution::new(s.clone(), levels.clone()).unwrap()).unwrap();
        for a in s.events() {
            for b in s.events() {
                prop_assert_eq!(rel.geq(a, b), poss(a, &levels) >= poss(b, &levels));
            }
        }
    }

    #[test]
    fn discrimax_refines_possibility(levels in levels()) {
        let s = space(levels.len());
        let pi = PossibilityDistribution::new(s.clone(), levels).unwrap();
        let (p, d) = (induce::possibility(&pi).unwrap(), induce::discrimax(&pi).unwrap());
        for a in s.events() {
            for b in s.events() {
                if p.strict(a, b) {
                    prop_assert!(d.strict(a, b));
                }
            }
        }
    }

    #[test]
    fn big_stepped_agrees_with_leximax(levels in levels()) {
        let s = space(levels.len());
        let p = construct::big_stepped_from_levels(&s, &levels).unwrap();
        prop_assert!(construct::check_big_stepped(&p).pass);
        let lex = induce::leximax(&PossibilityDistribution::new(s.clone(), levels).unwrap()).unwrap();
        // Oracle for the probability side: exact sums per event.
        for a in s.events() {
            for b in s.events() {
                prop_assert_eq!(lex.geq(a, b), p.probability_of(a) >= p.probability_of(b));
            }
        }
    }

    #[test]
    fn simple_generation_is_consistent_with_its_basic(levels in levels()) {
        let basic = BasicRelation::from_levels(space(levels.len()), &levels).unwrap();
        let generated = induce::simply_generate(&basic).unwrap();
        prop_assert_eq!(induce::basic_from_relation(&generated).unwrap(), basic);
    }

    #[test]
    fn induced_relations_depend_only_on_the_order(levels in levels(), scale in 1u32..5, shift in 0u32..5) {
        let s = space(levels.len());
        let moved: Vec<u32> = levels.iter().map(|&l| if l == 0 { 0 } else { l * scale + shift }).collect();
        let (a, b) = (
            PossibilityDistribution::new(s.clone(), levels).unwrap(),
            PossibilityDistribution::new(s, moved).unwrap(),
        );
        prop_assert_eq!(induce::possibility(&a).unwrap(), induce::possibility(&b).unwrap());
        prop_assert_eq!(induce::discrimax(&a).unwrap(), induce::discrimax(&b).unwrap());
        prop_assert_eq!(induce::leximax(&a).unwrap(), induce::leximax(&b).unwrap());
    }

    #[test]
    fn lexicographic_blocks_dominate(weights in prop::collection::vec(1i64..7, 2..=6), cut in 1usize..6) {
        let n = weights.len();
        let s = space(n);
        let cut = cut.min(n - 1);
        let blocks = vec![
            Event::from_states(n, 0..cut).unwrap(),
            Event::from_states(n, cut..n).unwrap(),
        ];
        let partition = Partition::new(s, blocks).unwrap();
        let w: Vec<Rational> = weights.iter().map(|&x| Rational::from_integer(x)).collect();
        let (p, _) = induce::lexicographic(&partition, &w).unwrap();
        let later: Rational = (cut..n).map(|i| p.weight(i).clone()).sum();
        for i in 0..cut {
            prop_assert!(p.weight(i) > &later);
        }
        // In-block ratios survive the scaling.
        for i in 1..n {
            let same_block = (i < cut) == (i - 1 < cut);
            if same_block {
                prop_assert_eq!(
                    p.weight(i).clone() * Rational::from_integer(weights[i - 1]),
                    p.weight(i - 1).clone() * Rational::from_integer(weights[i])
                );
            }
        }
    }

    #[test]
    fn distribution_files_round_trip(levels in levels(), raw in prop::collection::vec(0i64..9, 1..=5)) {
        let n = levels.len();
        let s = space(n);
        let mut file = DistributionFile::new(s.clone());
        file.possibility = Some(PossibilityDistribution::new(s.clone(), levels).unwrap());
        let mut w: Vec<Rational> = raw.iter().cycle().take(n).map(|&x| Rational::from_integer(x)).collect();
        w[0] = Rational::from_integer(1) + w[0].clone();
        file.probability = Some(ProbabilityDistribution::from_unnormalized(s.clone(), w).unwrap());
        file.partition = Some(Partition::from_levels(s, file.possibility.as_ref().unwrap().levels()).unwrap());
        let text = file.to_string();
        prop_assert_eq!(parse_distribution(&text).unwrap(), file);
    }

    #[test]
    fn relation_files_round_trip(levels in levels()) {
        let pi = PossibilityDistribution::new(space(levels.len()), levels).unwrap();
        let rel = induce::necessity(&pi).unwrap();
        let text = render_relation(&rel);
        prop_assert_eq!(parse_relation(&text).unwrap(), rel);
    }
}
