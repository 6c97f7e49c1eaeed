use charvar_core::binom::*;
use charvar_core::exact::*;
use charvar_core::poly::*;
use charvar_core::weyl::*;
use charvar_core::Rat;
use num_traits::Zero;

fn main() {
    let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
    let r = PolyRing::ds(2);
    let s = BinomialModuleSpec::new(
        a,
        vec![parse_poly(&r, "d1^2 - d1*d2").unwrap()],
        vec![Rat::zero()],
    ).unwrap();
    let f = ProjectiveWeight::order_filtration(2);
    let comps = s.char_variety(&f).unwrap();
    for c in &comps {
        println!("cell {:?} face {:?} dim {}:", c.cell, c.face, c.dimension);
        for g in c.ideal.gb() { println!("    {}", g); }
    }
    // oracle: gr^F of the assembled ideal
    let gr = gr_ideal(&s.weyl_ideal(), &f);
    println!("gr GB:");
    for g in gr.gb() { println!("    {}", g); }
    // two-sided radical membership
    for c in &comps {
        for g in gr.gens() {
            assert!(c.ideal.radical_contains(g), "gr gen {} not on comp {:?}/{:?}", g, c.cell, c.face);
        }
    }
    let mut inter = comps[0].ideal.clone();
    for c in &comps[1..] { inter = inter.intersect(&c.ideal); }
    for g in inter.gens() {
        assert!(gr.radical_contains(g), "inter gen {} missing from rad gr", g);
    }
    println!("two-sided oracle equivalence: ok");
    // singular locus via both routes
    println!("sing_locus (closed form): {}", s.sing_locus().unwrap());
    let sing = singular_locus(&s.weyl_ideal());
    let div = charvar_core::poly::divisorial_part(&sing).unwrap();
    println!("divisorial(Weyl sing):     {}", div);
}
