use mutaprobe_core::mutation::confine::check;
use mutaprobe_core::mutation::{generate_variants, MutationClass};
use mutaprobe_core::program::ingest::ingest_text;
use mutaprobe_core::program::parse;

fn corpus() -> Vec<mutaprobe_core::program::Program> {
    ingest_text(include_str!("data/desk_corpus.jsonl")).unwrap().programs
}

#[test]
fn desk_corpus_variants_parse_and_stay_confined() {
    let mut per_class = std::collections::BTreeMap::new();
    for p in corpus() {
        let parent = p.parse().unwrap();
        for v in generate_variants(&p, 20240611).unwrap() {
            let tree = parse(&v.source).unwrap_or_else(|e| panic!("{}: {e}", v.id));
            check(&parent, &tree, &v.mutation()).unwrap_or_else(|e| panic!("{}: {e}\n{}", v.id, v.source));
            *per_class.entry(v.class).or_insert(0) += 1;
        }
    }
    eprintln!("{per_class:?}");
    for class in MutationClass::ALL {
        assert!(per_class.get(&class).copied().unwrap_or(0) > 20, "{class}");
    }
}
