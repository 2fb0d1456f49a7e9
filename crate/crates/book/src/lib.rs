//! Compiles every Rust listing in the guide under `book/src` as a doc-test.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(fields, "fields.md");
chapter!(grassmannian, "grassmannian.md");
chapter!(exterior, "exterior.md");
chapter!(census, "census.md");
chapter!(sections, "sections.md");
chapter!(asymptotics, "asymptotics.md");
chapter!(codes, "codes.md");
chapter!(cli, "cli.md");
chapter!(verification, "verification.md");
