// Persist field tables and load them back.
//
// Run with `cargo run --example table_cache`.

use ffhyper::field::{cache_path, CacheStatus};
use ffhyper::FieldCtx;

pub fn run_example() -> ffhyper::Result<()> {
    let dir = std::env::temp_dir().join(format!("ffhyper-example-{}", std::process::id()));
    let fresh = FieldCtx::build(27)?;
    let path = fresh.write_cache(&dir)?;
    println!("wrote {}", path.display());

    let (loaded, status) = FieldCtx::load_or_build(27, Some(&dir))?;
    assert_eq!(status, CacheStatus::Loaded);
    assert_eq!(loaded.exp_table(), fresh.exp_table());

    // a tampered file is rejected and the tables are rebuilt
    std::fs::write(cache_path(&dir, 27), "{\"version\": 1}")?;
    let (_, status) = FieldCtx::load_or_build(27, Some(&dir))?;
    println!("after tampering: {status:?}");
    assert!(matches!(status, CacheStatus::Rejected(_)));

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> ffhyper::Result<()> {
    run_example()
}
