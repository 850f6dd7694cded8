use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use binghouse::complex::{Dsu, SimplicialComplex, SimplicialMap};
use binghouse::constructions::{assembly, house2d, house3d};
use binghouse::cylinder::mapping_cylinder;
use binghouse::group::{fundamental_group, DEFAULT_PI1_BUDGET};
use binghouse::homology::homology_z;

fn boundary_surface(block: &SimplicialComplex) -> SimplicialComplex {
    let table = block.ridge_coface_table();
    let mut ridges = Vec::new();
    for (i, cof) in table.iter().enumerate() {
        if cof.len() == 1 {
            ridges.push(block.simplex(2, i).to_vec());
        }
    }
    let verts: BTreeSet<u32> = ridges.iter().flatten().copied().collect();
    SimplicialComplex::from_top_simplices(verts, ridges).unwrap()
}

fn split_components(c: &SimplicialComplex) -> Vec<SimplicialComplex> {
    let verts = c.vertices();
    let pos: BTreeMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut dsu = Dsu::new(verts.len());
    for e in c.simplices(1) {
        dsu.union(pos[&e[0]], pos[&e[1]]);
    }
    let mut groups: BTreeMap<usize, Vec<Vec<u32>>> = BTreeMap::new();
    for top in c.top_simplices() {
        groups.entry(dsu.find(pos[&top[0]])).or_default().push(top);
    }
    groups
        .into_values()
        .map(|tops| {
            let vs: BTreeSet<u32> = tops.iter().flatten().copied().collect();
            SimplicialComplex::from_top_simplices(vs, tops).unwrap()
        })
        .collect()
}

fn main() {
    let mut t = Instant::now();
    let grid = house3d::complex();
    println!("-- piece profiles --");
    for p in house3d::PIECES {
        let block = assembly::block_complex(&grid, p);
        let h = homology_z(&block);
        let b = boundary_surface(&block);
        let mut parts = Vec::new();
        for comp in split_components(&b) {
            parts.push((comp.euler_characteristic(), comp.orientable_surface()));
        }
        parts.sort();
        println!(
            "{}: betti {:?} torsion-free {} boundary {:?}",
            p.name(),
            h.betti,
            h.torsion_free(),
            parts
        );
    }
    println!("piece profiles: {:.2?}", t.elapsed());
    t = Instant::now();

    let mirror = |s: &binghouse::grid::GridSet| s.reflect(0, 13).reflect(4, 0);
    let pairs = [
        (house3d::Piece::UpperRoom, house3d::Piece::LowerRoom),
        (house3d::Piece::UpperTube, house3d::Piece::LowerTube),
        (house3d::Piece::UpperCollar, house3d::Piece::LowerCollar),
        (house3d::Piece::UpperMembrane, house3d::Piece::LowerMembrane),
    ];
    for (a, b) in pairs {
        let ok = mirror(&house3d::piece(a)) == house3d::piece(b);
        println!("mirror({}) == {}: {ok}", a.name(), b.name());
    }
    println!(
        "mirror(shell) == shell: {}",
        mirror(&house3d::piece(house3d::Piece::Shell)) == house3d::piece(house3d::Piece::Shell)
    );
    {
        let (a, b) = (house3d::Piece::UpperRoom, house3d::Piece::LowerRoom);
        let ba = assembly::block_complex(&grid, a);
        let bb = assembly::block_complex(&grid, b);
        let mut map = BTreeMap::new();
        for c in house3d::piece(a).closure().cells.iter() {
            if c.dim() == 1 {
                continue;
            }
            let mc = c.reflect(0, 13).reflect(4, 0);
            map.insert(grid.id_of_cell(c).unwrap(), grid.id_of_cell(&mc).unwrap());
        }
        let f = SimplicialMap::new(map);
        println!("room mirror map simplicial: {:?}", f.validate(&ba, &bb).is_ok());
        let image: BTreeSet<Vec<u32>> = ba
            .top_simplices()
            .iter()
            .map(|s| f.image_simplex(s).to_vec())
            .collect();
        let target: BTreeSet<Vec<u32>> = bb.top_simplices().into_iter().collect();
        println!("room mirror bijective on tops: {}", image == target);
    }
    println!("mirror checks: {:.2?}", t.elapsed());
    t = Instant::now();

    let h2 = house2d::sphere();
    let x = house2d::complex();
    let cyl2 = mapping_cylinder(&h2.map, &h2.complex, &x.complex).unwrap();
    let ga = fundamental_group(&cyl2.complex, DEFAULT_PI1_BUDGET).unwrap();
    println!("pi1(cylinder house2d): {:?} (cells {})", ga.status, cyl2.report().cells);
    println!("house2d cylinder pi1: {:.2?}", t.elapsed());
    t = Instant::now();

    let nb = house3d::sphere();
    let y = house3d::complex();
    let cyl3 = mapping_cylinder(&nb.map, &nb.complex, &y.complex).unwrap();
    println!("cylinder built: {:.2?}", t.elapsed());
    t = Instant::now();
    let ga = fundamental_group(&cyl3.complex, DEFAULT_PI1_BUDGET).unwrap();
    println!(
        "pi1(cylinder y3): {:?} generators {}->{} (cells {})",
        ga.status,
        ga.initial_generators,
        ga.final_generators,
        cyl3.report().cells
    );
    println!("y3 cylinder pi1: {:.2?}", t.elapsed());
}
