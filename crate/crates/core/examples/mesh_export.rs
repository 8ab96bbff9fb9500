//! OBJ meshes of the Cantor strip and of the cone.

use heis::field::ScalarField;
use heis::mesh::{cone_graph_distance, config_hash, graph_mesh, strip_mesh};
use heis::numerics::Rect;
use heis::strips::StripProfile;

fn main() -> heis::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "heis-out".into());
    std::fs::create_dir_all(&dir)?;
    let tag = config_hash("cantor-limit 100x100");
    let m = strip_mesh(
        &StripProfile::cantor_limit(),
        (-2.0, 2.0),
        (-0.5, 1.5),
        100,
        100,
        &tag,
    )?;
    let path = std::path::Path::new(&dir).join("cantor_strip.obj");
    m.write_obj(&path)?;
    println!(
        "{}: {} vertices, {} triangles",
        path.display(),
        m.vertices.len(),
        m.triangles.len()
    );

    let region = Rect::new(-2.0, 2.0, -1.0, 2.0)?;
    let c = graph_mesh(
        &ScalarField::cone(),
        &region,
        60,
        60,
        &config_hash("cone 60x60"),
    )?;
    let worst = c
        .vertices
        .iter()
        .map(|&v| heis::group::dilate(2.0, v).map(cone_graph_distance))
        .try_fold(0.0f64, |a, d| d.map(|d| a.max(d)))?;
    let path = std::path::Path::new(&dir).join("cone.obj");
    c.write_obj(&path)?;
    println!(
        "{}: dilated vertices off the graph by at most {worst:.1e}",
        path.display()
    );
    Ok(())
}
