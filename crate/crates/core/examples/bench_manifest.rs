//! Write a handful of instances and a manifest, then bench them.

use ecp::dispatch::{bench_csv, cmd_bench, read_manifest, BenchOptions};
use ecp::gen::{gen_random_instance, RandomFamily, RandomSize};
use ecp::graph::serialize_instance;

fn main() -> ecp::Result<()> {
    let dir = std::env::temp_dir().join("ecp-bench-example");
    std::fs::create_dir_all(&dir)?;
    let mut manifest = String::new();
    for (i, family) in RandomFamily::ALL.into_iter().enumerate() {
        let instance = gen_random_instance(family, i as u64, &RandomSize::new(14, 4))?;
        let name = format!("{family}.ecp");
        std::fs::write(dir.join(&name), serialize_instance(&instance, &[]))?;
        manifest.push_str(&name);
        manifest.push('\n');
    }
    std::fs::write(dir.join("manifest.txt"), manifest)?;
    let paths = read_manifest(&dir.join("manifest.txt"))?;
    let options = BenchOptions { timing: false, ..BenchOptions::default() };
    print!("{}", bench_csv(&cmd_bench(&paths, &options)));
    Ok(())
}
