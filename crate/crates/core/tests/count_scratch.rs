use extbranch_core::*;

#[test]
fn count_universe() {
    for (name, hi, half) in [("[0,3] half", 3i64, true), ("[0,3] int", 3, false), ("[0,7/2] half", 0, true)] {
        let mut spec = if name == "[0,7/2] half" {
            UniverseSpec::on_window(rat::int(0), rat::rat(7,2), 6)
        } else {
            UniverseSpec::on_window(rat::int(0), rat::int(hi), 6)
        };
        spec.half_steps = half;
        let reg = spec.registry().unwrap();
        let all = enumerate_multisegments(&spec).unwrap();
        let mut generic_per_degree = vec![0usize; 7];
        for m in &all {
            let d = m.degree(&reg) as usize;
            if is_generic(&m) { generic_per_degree[d] += 1; }
        }
        let pairs: usize = (1..=6).map(|d| generic_per_degree[d] * generic_per_degree[d-1]).sum();
        println!("{name}: generic per degree {:?} pairs {}", generic_per_degree, pairs);
    }
}
