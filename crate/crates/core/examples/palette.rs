// Schema colors: fixed hues for well-known families, tones within a family,
// hashed hues for everything else, and user overrides.
//
// `cargo run --example palette`

use cadv::palette::{assign_colors, ColorAssignment, ColorConfig};
use cadv::schema::Schema;

pub fn run_example() -> anyhow::Result<ColorAssignment> {
    let ids = [
        "java.lang",
        "javax.persistence",
        "javax.persistence.metamodel",
        "org.hibernate.annotations",
        "org.springframework.context",
        "org.junit",
        "javax.ejb",
        "com.fasterxml.jackson.annotation",
        "lombok",
        "unresolved",
    ];
    let schemas: Vec<Schema> = ids
        .iter()
        .map(|id| Schema {
            id: id.to_string(),
            display_name: id.to_string(),
            total_count: 1,
        })
        .collect();
    let colors = assign_colors(&schemas, None)?;
    for id in ids {
        println!("{id:<36} {}", colors.hex(id).unwrap_or_default());
    }

    let overrides = ColorConfig {
        colors: [("lombok".to_owned(), "#2A9D8F".to_owned())].into(),
    };
    let custom = assign_colors(&schemas, Some(&overrides))?;
    println!("\nwith override: lombok {}", custom.hex("lombok").unwrap_or_default());

    let too_light = ColorConfig {
        colors: [("lombok".to_owned(), "#F4F4F4".to_owned())].into(),
    };
    if let Err(e) = assign_colors(&schemas, Some(&too_light)) {
        println!("rejected: {e}");
    }
    Ok(colors)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
