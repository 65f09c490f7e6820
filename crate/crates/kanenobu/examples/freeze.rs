use kanenobu::braid::BraidWord;
use kanenobu::diagram::companion_diagram;
use kanenobu::fox::fox_matrix;
use kanenobu::invariants::casson_walker_of_diagram;
use kanenobu::lens::{lens_d_table, LensParams};
use kanenobu::presentation::presentation_from_white_graph;
use kanenobu::rational::{rat, rat_str};
use kanenobu::torsion::torsion_vector_from_fox;

fn main() {
    for n in [2u64, 3, 4] {
        let braid = BraidWord::beta_n(n);
        let d = companion_diagram(&braid).unwrap();
        let g = d.white_graph().unwrap();
        let pres = presentation_from_white_graph(&g);
        // anchor: generator 2 (the companion graph has 2 generators)
        let fm = fox_matrix(&pres, 2).unwrap();
        let tv = torsion_vector_from_fox(&fm).unwrap();
        let lambda = casson_walker_of_diagram(&d).unwrap();
        let (pos, neg) = tv.sign_candidates();
        let dvals = |cs: &[kanenobu::rational::Rat]| {
            let mut v: Vec<_> = cs.iter().map(|c| rat(2) * c - &lambda).collect();
            v.sort();
            v.iter().map(rat_str).collect::<Vec<_>>()
        };
        println!("n={} lambda={} minor={:?}", n, rat_str(&lambda), tv.minor);
        println!("  d(pos): {:?}", dvals(&pos));
        println!("  d(neg): {:?}", dvals(&neg));
        let m = 2 * n + 1;
        for s in 1..m {
            if num_gcd(m, s) != 1 { continue; }
            let t = lens_d_table(LensParams::new(m, s).unwrap()).unwrap();
            let mut vals: Vec<_> = t.iter().cloned().collect();
            vals.sort();
            println!("  L({},{}): {:?}", m, s, vals.iter().map(rat_str).collect::<Vec<_>>());
        }
    }
}

fn num_gcd(a: u64, b: u64) -> u64 { if b == 0 { a } else { num_gcd(b, a % b) } }
