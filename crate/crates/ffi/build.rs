use std::env;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").unwrap();
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("BELTNOT_H")
        .with_header("/* C interface to the beltnot library. Generated by cbindgen; do not edit. */")
        .with_cpp_compat(true)
        .generate()
        .expect("cbindgen header generation failed")
        .write_to_file(format!("{crate_dir}/include/beltnot.h"));
    println!("cargo:rerun-if-changed=src/lib.rs");
}
