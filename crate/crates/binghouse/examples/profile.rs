use std::time::Instant;

use binghouse::collapse::{greedy_collapse, replay};
use binghouse::complex::SimplicialComplex;
use binghouse::constructions::{assembly, house3d};
use binghouse::cylinder::mapping_cylinder;
use binghouse::double::neighborhood_boundary;
use binghouse::group::{fundamental_group, DEFAULT_PI1_BUDGET};
use binghouse::homology::homology_z;

fn phase(label: &str, t: &mut Instant) {
    println!("{label}: {:.2?}", t.elapsed());
    *t = Instant::now();
}

fn main() {
    let mut t = Instant::now();

    // criterion-3 style gates
    let nbh = neighborhood_boundary(&house3d::handlebody(), &house3d::ambient()).unwrap();
    let h = homology_z(&nbh.complex);
    println!("double(handlebody) betti {:?} torsion-free {}", h.betti, h.torsion_free());
    phase("double(handlebody)+homology", &mut t);

    let central = house3d::assembly(&[
        house3d::Piece::UpperRoom,
        house3d::Piece::LowerRoom,
        house3d::Piece::UpperCollar,
        house3d::Piece::LowerCollar,
    ]);
    let nbc = neighborhood_boundary(&central, &house3d::ambient()).unwrap();
    let h = homology_z(&nbc.complex);
    println!("boundary(1u2u6) betti {:?} torsion-free {}", h.betti, h.torsion_free());
    phase("boundary(1u2u6)+homology", &mut t);

    let nb = house3d::sphere();
    phase("sphere build", &mut t);

    let regions = assembly::cut_regions(&nb, &house3d::attachment_tori());
    for r in &regions {
        let h = homology_z(&r.complex);
        let census: Vec<(&str, usize)> =
            r.census.iter().map(|(&p, &n)| (p.name(), n)).collect();
        println!("region betti {:?} census {census:?}", h.betti);
    }
    phase("cut regions + homology", &mut t);

    // pi1 of the sphere via one removed top cell and a greedy collapse
    let m = &nb.complex;
    let mut tops = m.top_simplices();
    tops.remove(0);
    let verts: Vec<u32> = m.vertices().to_vec();
    let holed = SimplicialComplex::from_top_simplices(verts, tops).unwrap();
    phase("M minus one tet", &mut t);
    let (core, seq) = greedy_collapse(&holed, 7);
    println!(
        "core after greedy collapse: dim {} counts {:?}, {} steps",
        core.dim(),
        (0..=core.dim().max(0) as usize).map(|k| core.count(k)).collect::<Vec<_>>(),
        seq.steps.len()
    );
    phase("greedy collapse of holed M", &mut t);
    let replayed = replay(&holed, &seq).unwrap();
    println!("replay ok: core matches {}", replayed.top_simplices() == core.top_simplices());
    phase("replay certificate", &mut t);
    if core.count(0) > 1 || core.dim() > 0 {
        let ga = fundamental_group(&core, DEFAULT_PI1_BUDGET).unwrap();
        println!("pi1(core): {:?} rank {} torsion {:?}", ga.status, ga.abelian_rank, ga.abelian_torsion);
        phase("pi1 of core", &mut t);
    }

    // pi1 of the spine directly
    let y = house3d::complex();
    let ga = fundamental_group(&y.complex, DEFAULT_PI1_BUDGET).unwrap();
    println!(
        "pi1(Y): {:?} generators {}->{} relators {}->{} total len {}",
        ga.status,
        ga.initial_generators,
        ga.final_generators,
        ga.initial_relators,
        ga.final_relators,
        ga.final_total_length
    );
    phase("pi1 of Y", &mut t);

    // the big mapping cylinder
    let cyl = mapping_cylinder(&nb.map, &nb.complex, &y.complex).unwrap();
    println!(
        "cylinder cells {:?} certified {}",
        cyl.report().cells,
        cyl.verified
    );
    phase("mapping cylinder M->Y build+verify", &mut t);
    let h = homology_z(&cyl.complex);
    println!("cylinder betti {:?} torsion-free {}", h.betti, h.torsion_free());
    phase("cylinder homology", &mut t);
}
