//! Writes the Steiner Roman surface with the B4 hexagon and a projection of
//! the 21-dim Veronese image of the five-crosscap surface.

use dualfive::meshout::{project, sample_surface, write_mesh, MeshFormat, SurfaceTarget};

fn main() -> anyhow::Result<()> {
    let dir = std::env::temp_dir();

    let b4 = sample_surface(SurfaceTarget::B4, 48)?;
    let roman = project(&b4, [1, 2, 3])?;
    let path = dir.join("steiner_roman.obj");
    write_mesh(&roman, MeshFormat::Obj, &path)?;
    println!("{}: {} vertices, {} quads, {} curves", path.display(), roman.vertices.len(), roman.faces.len(), roman.polylines.len());

    let crosscap = project(&b4, [1, 2, 6])?;
    let path = dir.join("crosscap.ply");
    write_mesh(&crosscap, MeshFormat::Ply, &path)?;
    println!("{}", path.display());

    let five = sample_surface(SurfaceTarget::Single, 17)?;
    let view = project(&five, [1, 2, 5])?;
    let path = dir.join("five_crosscap_125.obj");
    write_mesh(&view, MeshFormat::Obj, &path)?;
    println!("{}: {} patches from R^{}", path.display(), view.tags().len(), five.dim);
    Ok(())
}
