//! Random Java sources whose annotation facts are known by construction.
//!
//! Files mix explicit, wildcard, static and fully-qualified imports,
//! multi-line annotation arguments, nested annotations, generics, comments
//! and literals that look like annotations or braces, and method bodies with
//! annotated locals that must not be counted.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{OAnn, OClass, OElement, OFile};

const LIBS: &[(&str, &[&str])] = &[
    ("javax.persistence", &["Entity", "Table", "Column", "Id", "NamedQuery", "JoinColumn", "OneToMany"]),
    ("javax.ejb", &["Stateless", "TransactionAttribute", "EJB"]),
    ("org.junit", &["Test", "Before", "After", "Ignore"]),
    ("org.springframework.beans.factory.annotation", &["Autowired", "Qualifier", "Value"]),
    ("com.acme.meta", &["Audit", "Tag", "Flag"]),
];
const JAVA_LANG: &[&str] = &["Override", "Deprecated", "SuppressWarnings"];
const TYPES: &[&str] = &["int", "String", "List<String>", "Map<String, List<Integer>>", "long[]", "Outer.Inner", "T"];

#[derive(Debug, Clone)]
pub struct Generated {
    pub path: String,
    pub source: String,
    pub truth: OFile,
}

struct Gen {
    rng: ChaCha8Rng,
    /// written name → schema
    names: Vec<(String, String)>,
    counter: usize,
}

impl Gen {
    fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty")
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    fn fresh(&mut self, prefix: &str) -> String {
        self.counter += 1;
        format!("{prefix}{}", self.counter)
    }

    fn gap(&mut self) -> &'static str {
        if self.chance(0.25) {
            "\n      "
        } else {
            " "
        }
    }

    fn noise(&mut self) -> String {
        match self.rng.random_range(0..8) {
            0 => "    // @Fake(1, 2) { not code\n".to_owned(),
            1 => "    /* @Nope({ \"x\" }) } */\n".to_owned(),
            2 => "    /**\n     * Docs {@link Outer} and @param x.\n     */\n".to_owned(),
            _ => String::new(),
        }
    }

    /// An annotation at `depth` plus its nested ones, pre-order.
    fn annotation(&mut self, depth: u32) -> (String, Vec<OAnn>) {
        let (name, schema) = self.pick(&self.names.clone()).clone();
        let mut text = format!("@{name}");
        let mut nested = Vec::new();
        let form = self.rng.random_range(0..6);
        let aa = match form {
            0 | 1 => 0,
            2 => {
                text.push_str(if self.chance(0.5) { "()" } else { "( )" });
                0
            }
            3 => {
                let v = self.value(depth, &mut nested);
                text.push_str(&format!("({v})"));
                1
            }
            _ => {
                let k = self.rng.random_range(1..=3);
                let mut parts = Vec::new();
                for i in 0..k {
                    let v = self.value(depth, &mut nested);
                    parts.push(format!("k{i} = {v}"));
                }
                let mut joined = String::new();
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        joined.push(',');
                        joined.push_str(self.gap());
                    }
                    joined.push_str(part);
                }
                let open = if self.chance(0.15) { "(\n        " } else { "(" };
                text.push_str(&format!("{open}{joined})"));
                k
            }
        };
        let locad = text.matches('\n').count() as u32 + 1;
        let mut all = vec![OAnn {
            name,
            schema,
            aa,
            locad,
            depth,
        }];
        all.extend(nested);
        (text, all)
    }

    fn value(&mut self, depth: u32, nested: &mut Vec<OAnn>) -> String {
        let options = if depth < 2 { 13 } else { 10 };
        match self.rng.random_range(0..options) {
            0 => self.rng.random_range(0..1000).to_string(),
            1 => "\"a, b) @c\"".to_owned(),
            2 => "'{'".to_owned(),
            3 => "'\\''".to_owned(),
            4 => "Kind.ALPHA".to_owned(),
            5 => "String.class".to_owned(),
            6 => "{1, 2, 3}".to_owned(),
            7 => "\"first, \" +\n          \"second\"".to_owned(),
            8 => "\"\"\"\n        block, with \"quotes\" and }\n        \"\"\"".to_owned(),
            9 => "{}".to_owned(),
            10 | 11 => {
                let (text, anns) = self.annotation(depth + 1);
                nested.extend(anns);
                text
            }
            _ => {
                let (a, anns_a) = self.annotation(depth + 1);
                let (b, anns_b) = self.annotation(depth + 1);
                nested.extend(anns_a);
                nested.extend(anns_b);
                format!("{{{a},{}{b}}}", self.gap())
            }
        }
    }

    /// Zero to `max` annotations, each followed by a newline or a space.
    fn annotations(&mut self, max: usize, indent: &str) -> (String, Vec<OAnn>) {
        let n = self.rng.random_range(0..=max);
        let mut text = String::new();
        let mut anns = Vec::new();
        for _ in 0..n {
            let (t, a) = self.annotation(0);
            text.push_str(&t);
            if self.chance(0.6) {
                text.push('\n');
                text.push_str(indent);
            } else {
                text.push(' ');
            }
            anns.extend(a);
        }
        (text, anns)
    }

    fn ty(&mut self) -> String {
        self.pick(TYPES).to_string()
    }

    fn body(&mut self) -> String {
        let mut body = String::from("{\n");
        for _ in 0..self.rng.random_range(0..4) {
            let stmt = match self.rng.random_range(0..7) {
                0 => "        String s = \"} { @Bogus(\";\n".to_owned(),
                1 => "        char c = '}';\n".to_owned(),
                2 => "        if (x > 0) { call(() -> { return; }); }\n".to_owned(),
                3 => "        @SuppressWarnings(\"unused\") int local = 0;\n".to_owned(),
                4 => "        Runnable r = new Runnable() { @Override public void run() {} };\n".to_owned(),
                5 => "        // } unbalanced in comment\n".to_owned(),
                _ => "        for (int i = 0; i < 3; i++) { list.add(i); }\n".to_owned(),
            };
            body.push_str(&stmt);
        }
        body.push_str("    }");
        body
    }

    fn parameters(&mut self, elements: &mut Vec<OElement>) -> String {
        let n = self.rng.random_range(0..=3);
        let mut params = Vec::new();
        for _ in 0..n {
            let (anns_text, anns) = if self.chance(0.4) {
                let (t, a) = self.annotation(0);
                (format!("{t} "), a)
            } else {
                (String::new(), Vec::new())
            };
            let name = self.fresh("arg");
            let fin = if self.chance(0.2) { "final " } else { "" };
            let ty = self.ty();
            params.push(format!("{anns_text}{fin}{ty} {name}"));
            if !anns.is_empty() {
                elements.push(OElement {
                    kind: "parameter",
                    name,
                    anns,
                });
            }
        }
        params.join(", ")
    }

    /// A class body and its nested classes; returns the text and every class
    /// in declaration pre-order.
    fn class(&mut self, name: &str, qualified: &str, header_mods: &str, depth: u32) -> (String, Vec<OClass>) {
        let (type_anns_text, type_anns) = self.annotations(3, if depth == 0 { "" } else { "    " });
        let generics = if self.chance(0.3) { "<T extends Comparable<T>>" } else { "" };
        let extends = if self.chance(0.3) { " extends Base<String> implements Api, Other<T>" } else { "" };
        let mut text = format!("{type_anns_text}{header_mods}class {name}{generics}{extends} {{\n");
        let mut elements = Vec::new();
        if !type_anns.is_empty() {
            elements.push(OElement {
                kind: "type",
                name: name.to_owned(),
                anns: type_anns,
            });
        }
        let mut inner_classes = Vec::new();
        for _ in 0..self.rng.random_range(0..7) {
            text.push_str(&self.noise());
            let (anns_text, anns) = self.annotations(2, "    ");
            match self.rng.random_range(0..10) {
                0..=2 => {
                    let field = self.fresh("field");
                    let ty = self.ty();
                    let init = match self.rng.random_range(0..5) {
                        0 => " = \"x;{\"",
                        1 => " = new Thing(1, \"}\")",
                        2 => " = {1, 2}",
                        _ => "",
                    };
                    text.push_str(&format!("    {anns_text}private static {ty} {field}{init};\n"));
                    if !anns.is_empty() {
                        elements.push(OElement { kind: "field", name: field, anns });
                    }
                }
                3..=6 => {
                    let method = self.fresh("method");
                    let generic = if self.chance(0.2) { "<K, V> " } else { "" };
                    let ret = if self.chance(0.5) { "void".to_owned() } else { self.ty() };
                    let index = elements.len();
                    let mut params = Vec::new();
                    let plist = self.parameters(&mut params);
                    let throws = if self.chance(0.2) { " throws IOException, Bad" } else { "" };
                    let body = self.body();
                    text.push_str(&format!("    {anns_text}public {generic}{ret} {method}({plist}){throws} {body}\n"));
                    if !anns.is_empty() {
                        elements.insert(index, OElement { kind: "method", name: method, anns });
                    }
                    elements.extend(params);
                }
                7 | 8 => {
                    let mut params = Vec::new();
                    let plist = self.parameters(&mut params);
                    let body = self.body();
                    text.push_str(&format!("    {anns_text}protected {name}({plist}) {body}\n"));
                    if !anns.is_empty() {
                        elements.push(OElement {
                            kind: "constructor",
                            name: name.to_owned(),
                            anns,
                        });
                    }
                    elements.extend(params);
                }
                _ if depth == 0 => {
                    let inner = self.fresh("Inner");
                    let (inner_text, classes) =
                        self.class(&inner, &format!("{qualified}.{inner}"), "static ", depth + 1);
                    // annotations generated above stay unused for nested classes
                    text.push_str(&format!("    {inner_text}\n"));
                    inner_classes.extend(classes);
                }
                _ => text.push_str("    { staticInit(); }\n"),
            }
        }
        text.push('}');
        let mut classes = vec![OClass {
            qualified: qualified.to_owned(),
            elements,
        }];
        classes.extend(inner_classes);
        (text, classes)
    }
}

/// One random file; the same seed always yields the same file.
pub fn generate(seed: u64) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let package = if rng.random_bool(0.1) {
        String::new()
    } else if rng.random_bool(0.5) {
        format!("p{}", rng.random_range(0..4))
    } else {
        format!("p{}.sub{}", rng.random_range(0..4), rng.random_range(0..3))
    };

    let mut source = String::new();
    if !package.is_empty() {
        source.push_str(&format!("package {package};\n\n"));
    }

    let wildcard_count = *[0usize, 1, 1, 2].choose(&mut rng).expect("non-empty");
    let mut lib_order: Vec<usize> = (0..LIBS.len()).collect();
    for i in (1..lib_order.len()).rev() {
        let j = rng.random_range(0..=i);
        lib_order.swap(i, j);
    }
    let wildcards: Vec<&str> = lib_order[..wildcard_count].iter().map(|&i| LIBS[i].0).collect();
    let wildcard_schema = match wildcards.as_slice() {
        [only] => Some(only.to_string()),
        _ => None,
    };

    let local_type = rng.random_bool(0.3).then(|| "Marker".to_owned());
    let mut names: Vec<(String, String)> = Vec::new();
    let mut imports = Vec::new();
    let fallback = |local: bool| -> String {
        if let Some(w) = &wildcard_schema {
            w.clone()
        } else if local && wildcards.is_empty() {
            if package.is_empty() {
                "(default)".to_owned()
            } else {
                package.clone()
            }
        } else {
            "unresolved".to_owned()
        }
    };
    for (lib, simple_names) in LIBS {
        for simple in *simple_names {
            match rng.random_range(0..5) {
                0 | 1 => {
                    imports.push(format!("import {lib}.{simple};"));
                    names.push((simple.to_string(), lib.to_string()));
                }
                2 => names.push((format!("{lib}.{simple}"), lib.to_string())),
                3 => names.push((simple.to_string(), fallback(false))),
                _ => {}
            }
        }
    }
    for w in &wildcards {
        imports.push(format!("import {w}.*;"));
    }
    if rng.random_bool(0.3) {
        imports.push("import static org.junit.Assert.assertEquals;".to_owned());
        imports.push("import static com.acme.meta.*;".to_owned());
    }
    for simple in JAVA_LANG {
        names.push((simple.to_string(), "java.lang".to_owned()));
    }
    if let Some(local) = &local_type {
        names.push((local.clone(), fallback(true)));
    }
    for i in (1..imports.len()).rev() {
        let j = rng.random_range(0..=i);
        imports.swap(i, j);
    }
    for import in &imports {
        source.push_str(import);
        source.push('\n');
    }
    source.push('\n');

    let mut gen = Gen { rng, names, counter: 0 };
    let main = format!("C{seed}");
    let qualify = |name: &str| {
        if package.is_empty() {
            name.to_owned()
        } else {
            format!("{package}.{name}")
        }
    };
    let mut classes = Vec::new();
    let (text, cls) = gen.class(&main, &qualify(&main), "public ", 0);
    source.push_str(&text);
    source.push('\n');
    classes.extend(cls);
    if gen.chance(0.3) {
        let second = format!("Helper{seed}");
        let (text, cls) = gen.class(&second, &qualify(&second), "", 0);
        source.push_str(&format!("\n{text}\n"));
        classes.extend(cls);
    }
    if let Some(local) = &local_type {
        source.push_str(&format!("\n@interface {local} {{\n    String value() default \"{{\";\n    int[] more() default {{1, 2}};\n}}\n"));
        classes.push(OClass {
            qualified: qualify(local),
            elements: Vec::new(),
        });
    }

    let path = if package.is_empty() {
        format!("{main}.java")
    } else {
        format!("{}/{main}.java", package.replace('.', "/"))
    };
    Generated {
        path,
        source,
        truth: OFile {
            classes: classes.into_iter().map(|c| (c.qualified.clone(), c)).collect::<BTreeMap<_, _>>(),
        },
    }
}
