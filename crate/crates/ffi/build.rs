fn main() {
    let root = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    cbindgen::generate(&root)
        .expect("unable to generate bindings")
        .write_to_file(format!("{root}/include/lashof.h"));
}
