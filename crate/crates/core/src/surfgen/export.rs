//! Plain-text mesh output: Wavefront OBJ and CSV.

use std::fmt::Write;

use super::grid::SurfaceGrid;

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Vertices `(x1, x2, φ)` in row-major order and one quad per grid cell.
pub fn to_obj(grid: &SurfaceGrid) -> String {
    let mut out = String::new();
    for s in &grid.samples {
        let [x, y, z] = s.position;
        writeln!(out, "v {} {} {}", clean(x), clean(y), clean(z)).unwrap();
    }
    for j in 0..grid.nv - 1 {
        for i in 0..grid.nu - 1 {
            let a = j * grid.nu + i + 1;
            let b = a + 1;
            let c = b + grid.nu;
            let d = a + grid.nu;
            writeln!(out, "f {a} {b} {c} {d}").unwrap();
        }
    }
    out
}

pub const CSV_HEADER: &str = "u,v,x1,x2,phi,n1,n2,lambda";

pub fn to_csv(grid: &SurfaceGrid) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (s, lambda) in grid.samples.iter().zip(&grid.density) {
        let row = [
            s.domain_point[0],
            s.domain_point[1],
            s.position[0],
            s.position[1],
            s.position[2],
            s.conormal[0],
            s.conormal[1],
            *lambda,
        ];
        let cells: Vec<String> = row.iter().map(|x| clean(*x).to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
