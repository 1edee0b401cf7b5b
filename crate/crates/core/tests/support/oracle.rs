//! Recomputes annotation facts straight from source text, sharing no code
//! with the library: its own scanner, declaration walker, argument counter
//! and import resolution.

use std::collections::BTreeMap;

/// One annotation occurrence, as the oracle and the generator see it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OAnn {
    pub name: String,
    pub schema: String,
    pub aa: u32,
    pub locad: u32,
    pub depth: u32,
}

/// An annotated declaration and its occurrences in pre-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OElement {
    pub kind: &'static str,
    pub name: String,
    pub anns: Vec<OAnn>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OClass {
    pub qualified: String,
    /// Only elements carrying at least one annotation.
    pub elements: Vec<OElement>,
}

impl OClass {
    pub fn ac(&self) -> u32 {
        self.elements.iter().map(|e| e.anns.len() as u32).sum()
    }

    pub fn asc(&self) -> u32 {
        let mut schemas: Vec<&str> = self.elements.iter().flat_map(|e| &e.anns).map(|a| a.schema.as_str()).collect();
        schemas.sort_unstable();
        schemas.dedup();
        schemas.len() as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OFile {
    pub classes: BTreeMap<String, OClass>,
}

impl OFile {
    pub fn schema_counts(&self) -> BTreeMap<String, u64> {
        let mut counts = BTreeMap::new();
        for a in self.classes.values().flat_map(|c| &c.elements).flat_map(|e| &e.anns) {
            *counts.entry(a.schema.clone()).or_default() += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq)]
enum T {
    Word(String),
    Sym(char),
    Lit,
}

#[derive(Debug, Clone)]
struct Tk {
    t: T,
    line: u32,
}

/// Drops comments and literal contents, keeping line numbers.
fn scan(src: &str) -> Vec<Tk> {
    let c: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let newline = |c: &[char], i: usize, line: &mut u32| {
        if c[i] == '\n' || (c[i] == '\r' && c.get(i + 1) != Some(&'\n')) {
            *line += 1;
        }
    };
    while i < c.len() {
        let ch = c[i];
        if ch.is_whitespace() {
            newline(&c, i, &mut line);
            i += 1;
        } else if ch == '/' && c.get(i + 1) == Some(&'/') {
            while i < c.len() && c[i] != '\n' && c[i] != '\r' {
                i += 1;
            }
        } else if ch == '/' && c.get(i + 1) == Some(&'*') {
            i += 2;
            while i < c.len() && !(c[i] == '*' && c.get(i + 1) == Some(&'/')) {
                newline(&c, i, &mut line);
                i += 1;
            }
            i += 2;
        } else if ch == '"' && c.get(i + 1) == Some(&'"') && c.get(i + 2) == Some(&'"') {
            out.push(Tk { t: T::Lit, line });
            i += 3;
            while i < c.len() && !(c[i] == '"' && c.get(i + 1) == Some(&'"') && c.get(i + 2) == Some(&'"')) {
                if c[i] == '\\' {
                    i += 1;
                }
                newline(&c, i, &mut line);
                i += 1;
            }
            i += 3;
        } else if ch == '"' || ch == '\'' {
            out.push(Tk { t: T::Lit, line });
            i += 1;
            while i < c.len() && c[i] != ch {
                if c[i] == '\\' {
                    i += 1;
                }
                i += 1;
            }
            i += 1;
        } else if ch.is_alphanumeric() || ch == '_' || ch == '$' {
            let start = i;
            while i < c.len() && (c[i].is_alphanumeric() || c[i] == '_' || c[i] == '$') {
                i += 1;
            }
            out.push(Tk {
                t: T::Word(c[start..i].iter().collect()),
                line,
            });
        } else {
            out.push(Tk { t: T::Sym(ch), line });
            i += 1;
        }
    }
    out
}

const MODIFIERS: &[&str] = &[
    "public", "protected", "private", "static", "final", "abstract", "native", "synchronized",
    "transient", "volatile", "strictfp", "default", "sealed",
];
const TYPE_WORDS: &[&str] = &["class", "interface", "enum", "record"];

struct Import {
    path: String,
    wildcard: bool,
    is_static: bool,
}

/// An annotation before schema resolution.
struct RawAnn {
    name: String,
    aa: u32,
    locad: u32,
    depth: u32,
}

/// (kind, name, annotations) of one declaration.
type RawElement = (&'static str, String, Vec<RawAnn>);

struct Walker {
    toks: Vec<Tk>,
    pos: usize,
    package: String,
    imports: Vec<Import>,
    /// (qualified class, elements with unresolved annotations)
    classes: Vec<(String, Vec<RawElement>)>,
    annotation_types: Vec<String>,
}

impl Walker {
    fn peek(&self, k: usize) -> Option<&T> {
        self.toks.get(self.pos + k).map(|t| &t.t)
    }

    fn is_sym(&self, k: usize, c: char) -> bool {
        self.peek(k) == Some(&T::Sym(c))
    }

    fn word(&self, k: usize) -> Option<&str> {
        match self.peek(k) {
            Some(T::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn line(&self, k: usize) -> u32 {
        self.toks.get(self.pos + k).or(self.toks.last()).map_or(1, |t| t.line)
    }

    fn at_annotation(&self) -> bool {
        self.is_sym(0, '@') && self.word(1).is_some_and(|w| w != "interface")
    }

    fn dotted(&mut self) -> String {
        let mut name = String::new();
        while let Some(w) = self.word(0) {
            name.push_str(w);
            self.pos += 1;
            if self.is_sym(0, '.') && self.word(1).is_some() {
                name.push('.');
                self.pos += 1;
            } else {
                break;
            }
        }
        name
    }

    /// Skips a balanced `{...}` starting at the current `{`.
    fn skip_braces(&mut self) {
        let mut depth = 0i32;
        while let Some(t) = self.peek(0) {
            match t {
                T::Sym('{') => depth += 1,
                T::Sym('}') => depth -= 1,
                _ => {}
            }
            self.pos += 1;
            if depth == 0 {
                return;
            }
        }
    }

    /// Annotation at `@`, followed by its nested annotations in pre-order.
    fn annotation(&mut self, depth: u32) -> Vec<RawAnn> {
        let start = self.line(0);
        self.pos += 1;
        let name = self.dotted();
        let mut end = self.toks[self.pos - 1].line;
        let mut args = 0;
        let mut nested = Vec::new();
        if self.is_sym(0, '(') {
            self.pos += 1;
            let mut level = 1;
            let mut filled = false;
            while self.peek(0).is_some() {
                if self.at_annotation() {
                    nested.extend(self.annotation(depth + 1));
                    filled = true;
                    continue;
                }
                match self.peek(0) {
                    Some(T::Sym('(' | '{' | '[')) => {
                        level += 1;
                        filled = true;
                    }
                    Some(T::Sym(')' | '}' | ']')) => {
                        level -= 1;
                        if level == 0 {
                            end = self.line(0);
                            self.pos += 1;
                            break;
                        }
                    }
                    Some(T::Sym(',')) if level == 1 => {
                        if filled {
                            args += 1;
                        }
                        filled = false;
                    }
                    _ => filled = true,
                }
                self.pos += 1;
            }
            if filled {
                args += 1;
            }
        }
        let mut out = vec![RawAnn {
            name,
            aa: args,
            locad: end - start + 1,
            depth,
        }];
        out.extend(nested);
        out
    }

    fn run(&mut self) {
        let mut pending = Vec::new();
        while self.peek(0).is_some() {
            if self.at_annotation() {
                pending.extend(self.annotation(0));
                continue;
            }
            if self.is_sym(0, '@') && self.word(1) == Some("interface") {
                self.pos += 2;
                self.type_decl(std::mem::take(&mut pending), None, true);
                continue;
            }
            match self.word(0) {
                Some("package") => {
                    self.pos += 1;
                    self.package = self.dotted();
                    pending.clear();
                }
                Some("import") => {
                    self.pos += 1;
                    let is_static = self.word(0) == Some("static");
                    if is_static {
                        self.pos += 1;
                    }
                    let path = self.dotted();
                    let wildcard = self.is_sym(0, '.') && self.is_sym(1, '*');
                    self.imports.push(Import { path, wildcard, is_static });
                    while self.peek(0).is_some() && !self.is_sym(0, ';') {
                        self.pos += 1;
                    }
                }
                Some(w) if TYPE_WORDS.contains(&w) => {
                    self.pos += 1;
                    self.type_decl(std::mem::take(&mut pending), None, false);
                    continue;
                }
                _ => {}
            }
            self.pos += 1;
        }
    }

    /// At the type name; consumes through the closing brace.
    fn type_decl(&mut self, anns: Vec<RawAnn>, outer: Option<&str>, is_annotation_type: bool) {
        let name = self.word(0).unwrap_or("").to_owned();
        if is_annotation_type {
            self.annotation_types.push(name.clone());
        }
        let qualified = match outer {
            Some(o) => format!("{o}.{name}"),
            None => name.clone(),
        };
        while self.peek(0).is_some() && !self.is_sym(0, '{') {
            self.pos += 1;
        }
        self.pos += 1;
        let index = self.classes.len();
        self.classes.push((qualified.clone(), vec![("type", name.clone(), anns)]));

        let mut pending = Vec::new();
        let mut words: Vec<String> = Vec::new();
        while let Some(t) = self.peek(0).cloned() {
            if self.at_annotation() {
                pending.extend(self.annotation(0));
                continue;
            }
            match t {
                T::Sym('}') => {
                    self.pos += 1;
                    return;
                }
                T::Sym('{') => {
                    // initializer block
                    self.skip_braces();
                    pending.clear();
                    words.clear();
                }
                T::Sym(';') => {
                    if let Some(field) = words.last() {
                        self.classes[index].1.push(("field", field.clone(), std::mem::take(&mut pending)));
                    }
                    pending.clear();
                    words.clear();
                    self.pos += 1;
                }
                T::Sym('=') => {
                    let field = words.last().cloned().unwrap_or_default();
                    self.classes[index].1.push(("field", field, std::mem::take(&mut pending)));
                    words.clear();
                    self.skip_initializer();
                }
                T::Sym('(') => {
                    let member = words.last().cloned().unwrap_or_default();
                    let kind = if member == name { "constructor" } else { "method" };
                    self.classes[index].1.push((kind, member, std::mem::take(&mut pending)));
                    words.clear();
                    self.parameters(index);
                    self.member_tail();
                }
                T::Sym('<') => self.skip_angles(),
                T::Sym('@') if self.word(1) == Some("interface") => {
                    self.pos += 2;
                    self.type_decl(std::mem::take(&mut pending), Some(&qualified), true);
                    words.clear();
                }
                T::Word(w) if TYPE_WORDS.contains(&w.as_str()) => {
                    self.pos += 1;
                    self.type_decl(std::mem::take(&mut pending), Some(&qualified), false);
                    words.clear();
                }
                T::Word(w) => {
                    if !MODIFIERS.contains(&w.as_str()) {
                        words.push(w);
                    }
                    self.pos += 1;
                }
                _ => self.pos += 1,
            }
        }
    }

    fn skip_angles(&mut self) {
        let mut depth = 0;
        while let Some(t) = self.peek(0) {
            match t {
                T::Sym('<') => depth += 1,
                T::Sym('>') => depth -= 1,
                _ => {}
            }
            self.pos += 1;
            if depth == 0 {
                return;
            }
        }
    }

    /// From `=` to the terminating `;` of a field.
    fn skip_initializer(&mut self) {
        let mut depth = 0;
        while let Some(t) = self.peek(0) {
            match t {
                T::Sym('{' | '(' | '[') => depth += 1,
                T::Sym('}' | ')' | ']') => depth -= 1,
                T::Sym(';') if depth == 0 => {
                    self.pos += 1;
                    return;
                }
                _ => {}
            }
            self.pos += 1;
        }
    }

    /// At `(` of a method or constructor; records annotated parameters.
    fn parameters(&mut self, class: usize) {
        self.pos += 1;
        let mut pending = Vec::new();
        let mut last_word = String::new();
        let mut angle = 0;
        let mut paren = 1;
        while let Some(t) = self.peek(0).cloned() {
            if self.at_annotation() {
                pending.extend(self.annotation(0));
                continue;
            }
            match t {
                T::Sym('<') => angle += 1,
                T::Sym('>') => angle -= 1,
                T::Sym('(') => paren += 1,
                T::Sym(')') | T::Sym(',') if angle == 0 && (paren == 1) => {
                    if !pending.is_empty() {
                        self.classes[class].1.push(("parameter", last_word.clone(), std::mem::take(&mut pending)));
                    }
                    if t == T::Sym(')') {
                        self.pos += 1;
                        return;
                    }
                }
                T::Sym(')') => paren -= 1,
                T::Word(w) => last_word = w,
                _ => {}
            }
            self.pos += 1;
        }
    }

    /// After the parameter list: throws clause, `default` value, then a
    /// body or `;`.
    fn member_tail(&mut self) {
        while let Some(t) = self.peek(0) {
            match t {
                T::Sym('{') => {
                    self.skip_braces();
                    return;
                }
                T::Sym(';') => {
                    self.pos += 1;
                    return;
                }
                T::Word(w) if w == "default" => {
                    self.skip_initializer();
                    return;
                }
                _ => self.pos += 1,
            }
        }
    }
}

fn package_of(path: &str) -> String {
    let parts: Vec<&str> = path.split('.').collect();
    let mut cut = parts.len() - 1;
    for (i, p) in parts.iter().enumerate() {
        if p.starts_with(|c: char| c.is_uppercase()) {
            cut = i;
            break;
        }
    }
    parts[..cut].join(".")
}

const JAVA_LANG: &[&str] = &["Override", "Deprecated", "SuppressWarnings", "SafeVarargs", "FunctionalInterface"];

fn resolve(name: &str, w: &Walker) -> String {
    let mut simple = name;
    if let Some((head, _)) = name.split_once('.') {
        if head.starts_with(|c: char| c.is_lowercase()) && !package_of(name).is_empty() {
            return package_of(name);
        }
        simple = head;
    }
    for i in &w.imports {
        if !i.is_static && !i.wildcard && i.path.rsplit('.').next() == Some(simple) {
            return package_of(&i.path);
        }
    }
    if simple == name && JAVA_LANG.contains(&name) {
        return "java.lang".into();
    }
    let wild: Vec<&Import> = w.imports.iter().filter(|i| i.wildcard && !i.is_static).collect();
    match wild.len() {
        1 => package_of(&format!("{}.X", wild[0].path)),
        0 if w.annotation_types.iter().any(|t| t == simple) => {
            if w.package.is_empty() {
                "(default)".into()
            } else {
                w.package.clone()
            }
        }
        _ => "unresolved".into(),
    }
}

/// Everything the oracle can tell about a file: per class, the annotated
/// elements with their annotation occurrences.
pub fn analyze(src: &str) -> OFile {
    let mut w = Walker {
        toks: scan(src),
        pos: 0,
        package: String::new(),
        imports: Vec::new(),
        classes: Vec::new(),
        annotation_types: Vec::new(),
    };
    w.run();
    let mut file = OFile::default();
    for (name, elements) in &w.classes {
        let qualified = if w.package.is_empty() {
            name.clone()
        } else {
            format!("{}.{name}", w.package)
        };
        let elements = elements
            .iter()
            .filter(|(_, _, anns)| !anns.is_empty())
            .map(|(kind, name, anns)| OElement {
                kind,
                name: name.clone(),
                anns: anns
                    .iter()
                    .map(|a| OAnn {
                        name: a.name.clone(),
                        schema: resolve(&a.name, &w),
                        aa: a.aa,
                        locad: a.locad,
                        depth: a.depth,
                    })
                    .collect(),
            })
            .collect();
        file.classes.insert(qualified.clone(), OClass { qualified, elements });
    }
    file
}
