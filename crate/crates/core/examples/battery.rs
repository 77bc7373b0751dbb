use closure_space::oracle::{run_suite, SuiteScope};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let scope = if n == 4 { SuiteScope::spaces_only(4) } else { SuiteScope::exhaustive(n) };
    let report = run_suite(&scope).unwrap();
    let mut cases: Vec<_> = report.cases.iter().collect();
    cases.sort_by_key(|c| std::cmp::Reverse(c.time));
    for c in cases.iter().take(12) {
        println!("{:40} {:>8} inst {:>3} cex {:?}", c.id, c.instances, c.counterexample_count, c.time);
    }
    for c in &report.cases {
        if c.counterexample_count > 0 {
            println!("FAIL {} {:?}", c.id, c.counterexamples.first().map(|x| &x.detail));
        }
    }
    println!("spaces {} maps {} wall {:?} clean {}", report.spaces, report.maps, report.wall, report.is_clean());
}
