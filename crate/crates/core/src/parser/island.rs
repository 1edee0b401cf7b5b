use std::path::Path;

use super::lexer::{lex, Tok, Token};
use super::{
    ElementKind, ImportDecl, ParseError, RawAnnotation, RawElement, RawType, SourceFile, TypeKind,
};

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
    "non",
    "transitive",
];

type PResult<T> = Result<T, GiveUp>;

#[derive(Debug)]
struct GiveUp {
    line: u32,
    reason: String,
}

pub(super) fn parse(text: &str, path: &Path) -> Result<SourceFile, ParseError> {
    let lexed = lex(text);
    let gave_up = |g: GiveUp| ParseError::ParseGaveUp {
        path: path.to_path_buf(),
        line: g.line,
        reason: g.reason,
    };
    check_brace_balance(&lexed.tokens).map_err(gave_up)?;

    let mut p = Parser {
        toks: &lexed.tokens,
        pos: 0,
    };
    let unit = p.compilation_unit().map_err(gave_up)?;
    Ok(SourceFile {
        path: path.to_path_buf(),
        package_name: unit.package,
        imports: unit.imports,
        types: unit.types,
        line_count: lexed.line_count,
    })
}

/// Bodies are skipped by brace matching, so the whole file must balance.
fn check_brace_balance(tokens: &[Token]) -> PResult<()> {
    let mut open: Vec<u32> = Vec::new();
    for t in tokens {
        if t.is_punct('{') {
            open.push(t.line);
        } else if t.is_punct('}') && open.pop().is_none() {
            return Err(GiveUp {
                line: t.line,
                reason: "unmatched `}`".into(),
            });
        }
    }
    match open.last() {
        Some(&line) => Err(GiveUp {
            line,
            reason: format!("{} unclosed `{{`", open.len()),
        }),
        None => Ok(()),
    }
}

#[derive(Default)]
struct Unit {
    package: String,
    imports: Vec<ImportDecl>,
    types: Vec<RawType>,
}

struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, n: usize) -> Option<&'t Token> {
        self.toks.get(self.pos + n)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().is_some_and(|t| t.is_punct(c))
    }

    fn last_line(&self) -> u32 {
        self.toks.last().map_or(1, |t| t.end_line)
    }

    fn eof(&self, what: &str) -> GiveUp {
        GiveUp {
            line: self.last_line(),
            reason: format!("end of file inside {what}"),
        }
    }

    /// `@` followed by a name, excluding the `@interface` keyword.
    fn at_annotation(&self) -> bool {
        self.at_punct('@')
            && self
                .peek_at(1)
                .and_then(Token::ident)
                .is_some_and(|w| w != "interface")
    }

    fn at_type_keyword(&self) -> Option<TypeKind> {
        let t = self.peek()?;
        if t.is_punct('@') && self.peek_at(1)?.is_ident("interface") {
            return Some(TypeKind::Annotation);
        }
        match t.ident()? {
            "class" => Some(TypeKind::Class),
            "interface" => Some(TypeKind::Interface),
            "enum" => Some(TypeKind::Enum),
            "record" => {
                // contextual keyword: `record Name(` or `record Name<`
                let name = self.peek_at(1)?;
                let next = self.peek_at(2)?;
                (name.ident().is_some() && (next.is_punct('(') || next.is_punct('<')))
                    .then_some(TypeKind::Record)
            }
            _ => None,
        }
    }

    fn at_modifier(&self) -> bool {
        let Some(word) = self.peek().and_then(Token::ident) else {
            return false;
        };
        if word == "non" {
            // `non-sealed`
            return self.peek_at(1).is_some_and(|t| t.is_punct('-'))
                && self.peek_at(2).is_some_and(|t| t.is_ident("sealed"));
        }
        MODIFIERS.contains(&word)
    }

    fn skip_modifier(&mut self) {
        if self.peek().is_some_and(|t| t.is_ident("non")) {
            self.pos += 3;
        } else {
            self.pos += 1;
        }
    }

    fn dotted_name(&mut self) -> (String, u32) {
        let mut name = String::new();
        let mut line = self.peek().map_or(1, |t| t.line);
        while let Some(word) = self.peek().and_then(Token::ident) {
            name.push_str(word);
            line = self.peek().map_or(line, |t| t.line);
            self.bump();
            if self.at_punct('.') && self.peek_at(1).and_then(Token::ident).is_some() {
                name.push('.');
                self.bump();
            } else {
                break;
            }
        }
        (name, line)
    }

    fn compilation_unit(&mut self) -> PResult<Unit> {
        let mut unit = Unit::default();
        let mut pending: Vec<RawAnnotation> = Vec::new();
        while let Some(t) = self.peek() {
            if let Some(kind) = self.at_type_keyword() {
                let annotations = std::mem::take(&mut pending);
                self.type_declaration(kind, annotations, None, &mut unit.types)?;
                continue;
            }
            if self.at_annotation() {
                pending.push(self.annotation(0)?);
                continue;
            }
            if self.at_modifier() {
                self.skip_modifier();
                continue;
            }
            match &t.tok {
                Tok::Ident(w) if w == "package" => {
                    self.bump();
                    unit.package = self.dotted_name().0;
                    // package-info annotations have no owning type
                    pending.clear();
                    self.skip_past(';');
                }
                Tok::Ident(w) if w == "import" => {
                    self.bump();
                    unit.imports.push(self.import()?);
                }
                Tok::Punct('{') => {
                    self.skip_block()?;
                }
                _ => {
                    self.bump();
                }
            }
        }
        Ok(unit)
    }

    fn skip_past(&mut self, c: char) {
        while let Some(t) = self.bump() {
            if t.is_punct(c) {
                return;
            }
        }
    }

    fn import(&mut self) -> PResult<ImportDecl> {
        let is_static = self.peek().is_some_and(|t| t.is_ident("static"));
        if is_static {
            self.bump();
        }
        let (path, _) = self.dotted_name();
        let mut is_wildcard = false;
        if self.at_punct('.') && self.peek_at(1).is_some_and(|t| t.is_punct('*')) {
            self.pos += 2;
            is_wildcard = true;
        }
        self.skip_past(';');
        Ok(ImportDecl {
            path,
            is_wildcard,
            is_static,
        })
    }

    /// Consumes a `{ ... }` block including the closing brace; returns its line.
    fn skip_block(&mut self) -> PResult<u32> {
        debug_assert!(self.at_punct('{'));
        let mut depth = 0usize;
        while let Some(t) = self.bump() {
            if t.is_punct('{') {
                depth += 1;
            } else if t.is_punct('}') {
                depth -= 1;
                if depth == 0 {
                    return Ok(t.line);
                }
            }
        }
        Err(self.eof("a block"))
    }

    /// Consumes a balanced `(..)`, `[..]` or `<..>` group starting at the
    /// current opener. Annotations inside are consumed and discarded.
    fn skip_group(&mut self, open: char, close: char) -> PResult<()> {
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            if self.at_annotation() {
                self.annotation(0)?;
                continue;
            }
            self.bump();
            if t.is_punct(open) {
                depth += 1;
            } else if t.is_punct(close) {
                depth -= 1;
                if depth == 0 {
                    return Ok(());
                }
            } else if open == '<' && (t.is_punct(';') || t.is_punct('{')) {
                // a stray `<` that was not a type argument list
                self.pos -= 1;
                return Ok(());
            }
        }
        Err(self.eof("a bracketed group"))
    }

    fn annotation(&mut self, depth: u32) -> PResult<RawAnnotation> {
        let at = self.bump().expect("caller checked `@`");
        let (name, name_line) = self.dotted_name();
        let mut ann = RawAnnotation {
            simple_name: name,
            argument_count: 0,
            start_line: at.line,
            end_line: name_line,
            nesting_depth: depth,
            children: Vec::new(),
        };
        if !self.at_punct('(') {
            return Ok(ann);
        }
        self.bump();
        let mut nest = 0usize;
        let mut arg_has_tokens = false;
        loop {
            if self.at_annotation() {
                ann.children.push(self.annotation(depth + 1)?);
                arg_has_tokens = true;
                continue;
            }
            let Some(t) = self.bump() else {
                return Err(self.eof("annotation arguments"));
            };
            match t.tok {
                Tok::Punct('(' | '[' | '{') => {
                    nest += 1;
                    arg_has_tokens = true;
                }
                Tok::Punct(')') if nest == 0 => {
                    if arg_has_tokens {
                        ann.argument_count += 1;
                    }
                    ann.end_line = t.line;
                    return Ok(ann);
                }
                Tok::Punct(')' | ']' | '}') => {
                    if nest == 0 {
                        return Err(GiveUp {
                            line: t.line,
                            reason: format!("unbalanced arguments of @{}", ann.simple_name),
                        });
                    }
                    nest -= 1;
                }
                Tok::Punct(',') if nest == 0 => {
                    if arg_has_tokens {
                        ann.argument_count += 1;
                    }
                    arg_has_tokens = false;
                }
                _ => arg_has_tokens = true,
            }
        }
    }

    fn type_declaration(
        &mut self,
        kind: TypeKind,
        annotations: Vec<RawAnnotation>,
        outer: Option<&str>,
        out: &mut Vec<RawType>,
    ) -> PResult<()> {
        let keyword_line = self.peek().map_or(1, |t| t.line);
        self.pos += if kind == TypeKind::Annotation { 2 } else { 1 };
        let Some(name_tok) = self.peek().filter(|t| t.ident().is_some()) else {
            // `class` used as in `Foo.class`; not a declaration
            return Ok(());
        };
        let name = name_tok.ident().unwrap_or_default().to_owned();
        let name_line = name_tok.line;
        self.bump();
        let qualified = match outer {
            Some(o) => format!("{o}.{name}"),
            None => name.clone(),
        };
        let start_line = annotations
            .iter()
            .map(|a| a.start_line)
            .chain([keyword_line])
            .min()
            .unwrap_or(keyword_line);

        let mut elements = vec![RawElement {
            kind: ElementKind::Type,
            name: name.clone(),
            line: name_line,
            annotations,
        }];

        // header: type parameters, record components, extends/implements
        loop {
            let Some(t) = self.peek() else {
                return Err(self.eof("a type header"));
            };
            if t.is_punct('{') {
                break;
            }
            if t.is_punct(';') || t.is_punct('}') {
                // malformed header; keep what we have without a body
                out.push(RawType {
                    kind,
                    name,
                    qualified_name: qualified,
                    start_line,
                    end_line: t.line,
                    elements,
                });
                return Ok(());
            }
            if t.is_punct('<') {
                self.skip_group('<', '>')?;
            } else if t.is_punct('(') && kind == TypeKind::Record {
                self.parameters(ElementKind::Field, &mut elements)?;
            } else if self.at_annotation() {
                self.annotation(0)?;
            } else {
                self.bump();
            }
        }
        self.bump(); // `{`

        let mut nested = Vec::new();
        if kind == TypeKind::Enum {
            self.enum_constants(&mut elements)?;
        }
        let end_line = self.body(&name, &qualified, &mut elements, &mut nested)?;
        out.push(RawType {
            kind,
            name,
            qualified_name: qualified,
            start_line,
            end_line,
            elements,
        });
        out.append(&mut nested);
        Ok(())
    }

    fn enum_constants(&mut self, elements: &mut Vec<RawElement>) -> PResult<()> {
        let mut pending = Vec::new();
        loop {
            if self.at_annotation() {
                pending.push(self.annotation(0)?);
                continue;
            }
            let Some(t) = self.peek() else {
                return Err(self.eof("enum constants"));
            };
            match &t.tok {
                Tok::Punct(';') => {
                    self.bump();
                    return Ok(());
                }
                Tok::Punct('}') => return Ok(()),
                Tok::Punct(',') => {
                    self.bump();
                }
                Tok::Ident(word) => {
                    elements.push(RawElement {
                        kind: ElementKind::Field,
                        name: word.clone(),
                        line: t.line,
                        annotations: std::mem::take(&mut pending),
                    });
                    self.bump();
                    if self.at_punct('(') {
                        self.skip_group('(', ')')?;
                    }
                    if self.at_punct('{') {
                        self.skip_block()?;
                    }
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    /// Parses members until the closing brace of the type; returns its line.
    fn body(
        &mut self,
        simple_name: &str,
        qualified: &str,
        elements: &mut Vec<RawElement>,
        nested: &mut Vec<RawType>,
    ) -> PResult<u32> {
        let mut pending: Vec<RawAnnotation> = Vec::new();
        loop {
            if self.at_annotation() {
                pending.push(self.annotation(0)?);
                continue;
            }
            if self.at_modifier() {
                self.skip_modifier();
                continue;
            }
            if let Some(kind) = self.at_type_keyword() {
                let annotations = std::mem::take(&mut pending);
                self.type_declaration(kind, annotations, Some(qualified), nested)?;
                continue;
            }
            let Some(t) = self.peek() else {
                return Err(self.eof("a type body"));
            };
            match &t.tok {
                Tok::Punct('}') => {
                    self.bump();
                    return Ok(t.line);
                }
                Tok::Punct(';') => {
                    self.bump();
                }
                Tok::Punct('{') => {
                    // initializer block
                    self.skip_block()?;
                    pending.clear();
                }
                Tok::Punct('<') | Tok::Ident(_) => {
                    let annotations = std::mem::take(&mut pending);
                    self.member(simple_name, annotations, elements)?;
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    /// A field, method or constructor declaration, starting after modifiers.
    fn member(
        &mut self,
        simple_name: &str,
        annotations: Vec<RawAnnotation>,
        elements: &mut Vec<RawElement>,
    ) -> PResult<()> {
        let mut words: Vec<(&'t str, u32)> = Vec::new();
        loop {
            if self.at_annotation() {
                // type-use position, e.g. `String @A [] x`
                self.annotation(0)?;
                continue;
            }
            let Some(t) = self.peek() else {
                return Err(self.eof("a member declaration"));
            };
            match &t.tok {
                Tok::Punct('<') => {
                    self.skip_group('<', '>')?;
                }
                Tok::Punct('[') => {
                    self.skip_group('[', ']')?;
                }
                Tok::Punct('(') => {
                    let (name, line) = words.last().copied().unwrap_or(("", t.line));
                    let kind = if words.len() == 1 && name == simple_name {
                        ElementKind::Constructor
                    } else {
                        ElementKind::Method
                    };
                    elements.push(RawElement {
                        kind,
                        name: name.to_owned(),
                        line,
                        annotations,
                    });
                    self.parameters(ElementKind::Parameter, elements)?;
                    return self.method_tail();
                }
                Tok::Punct('=' | ';' | ',') => {
                    let (name, line) = words.last().copied().unwrap_or(("", t.line));
                    let names = self.field_declarators(name)?;
                    elements.push(RawElement {
                        kind: ElementKind::Field,
                        name: names,
                        line,
                        annotations,
                    });
                    return Ok(());
                }
                Tok::Punct('}') => {
                    // truncated member; the body loop closes the type
                    return Ok(());
                }
                Tok::Punct('{') => {
                    // e.g. a compact record constructor `Name { ... }`
                    if let Some(&(name, line)) = words.last() {
                        if words.len() == 1 && name == simple_name {
                            elements.push(RawElement {
                                kind: ElementKind::Constructor,
                                name: name.to_owned(),
                                line,
                                annotations,
                            });
                        }
                    }
                    self.skip_block()?;
                    return Ok(());
                }
                Tok::Ident(w) => {
                    words.push((w.as_str(), t.line));
                    self.bump();
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    /// Skips `throws`, `default` values and the body after a parameter list.
    fn method_tail(&mut self) -> PResult<()> {
        loop {
            if self.at_annotation() {
                self.annotation(0)?;
                continue;
            }
            let Some(t) = self.peek() else {
                return Err(self.eof("a method declaration"));
            };
            match &t.tok {
                Tok::Punct('{') => {
                    self.skip_block()?;
                    return Ok(());
                }
                Tok::Punct(';') => {
                    self.bump();
                    return Ok(());
                }
                Tok::Punct('}') => return Ok(()),
                Tok::Ident(w) if w == "default" => {
                    self.bump();
                    self.skip_expression()?;
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    /// Skips an expression up to (not including) a depth-0 `,`, `;` or `}`.
    fn skip_expression(&mut self) -> PResult<()> {
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Punct('(' | '[' | '{') => depth += 1,
                Tok::Punct(')' | ']' | '}') => {
                    if depth == 0 {
                        return Ok(());
                    }
                    depth -= 1;
                }
                Tok::Punct(',' | ';') if depth == 0 => return Ok(()),
                _ => {}
            }
            self.bump();
        }
        Err(self.eof("an initializer"))
    }

    /// Consumes declarators through the terminating `;` and joins their names.
    fn field_declarators(&mut self, first: &str) -> PResult<String> {
        let mut names = vec![first.to_owned()];
        loop {
            let Some(t) = self.peek() else {
                return Err(self.eof("a field declaration"));
            };
            match t.tok {
                Tok::Punct(';') => {
                    self.bump();
                    return Ok(names.join(", "));
                }
                Tok::Punct('}') => return Ok(names.join(", ")),
                Tok::Punct('=') => {
                    self.bump();
                    self.skip_expression()?;
                }
                Tok::Punct(',') => {
                    self.bump();
                    // `int a = 1, b;` vs a comma inside `new Map<K, V>()`
                    let is_declarator = self.peek().and_then(Token::ident).is_some()
                        && self.peek_at(1).is_some_and(|n| {
                            n.is_punct('=') || n.is_punct(',') || n.is_punct(';') || n.is_punct('[')
                        });
                    if is_declarator {
                        let name = self.bump().and_then(Token::ident).unwrap_or_default();
                        names.push(name.to_owned());
                    } else {
                        self.skip_expression()?;
                    }
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    /// Parses a parenthesised parameter (or record component) list, pushing
    /// one element per declared name.
    fn parameters(&mut self, kind: ElementKind, elements: &mut Vec<RawElement>) -> PResult<()> {
        debug_assert!(self.at_punct('('));
        self.bump();
        let mut annotations = Vec::new();
        let mut last: Option<(&'t str, u32)> = None;
        let mut angle = 0usize;
        let mut paren = 0usize;
        let mut start_of_param = true;
        loop {
            if self.at_annotation() {
                let ann = self.annotation(0)?;
                if start_of_param {
                    annotations.push(ann);
                }
                continue;
            }
            let Some(t) = self.bump() else {
                return Err(self.eof("a parameter list"));
            };
            match &t.tok {
                Tok::Punct('<') => angle += 1,
                Tok::Punct('>') => angle = angle.saturating_sub(1),
                Tok::Punct('(' | '[') => paren += 1,
                Tok::Punct(']') => paren = paren.saturating_sub(1),
                Tok::Punct(')') if paren > 0 => paren -= 1,
                Tok::Punct(c @ (',' | ')')) if angle == 0 => {
                    if let Some((name, line)) = last.take() {
                        elements.push(RawElement {
                            kind,
                            name: name.to_owned(),
                            line,
                            annotations: std::mem::take(&mut annotations),
                        });
                    }
                    annotations.clear();
                    start_of_param = true;
                    if *c == ')' {
                        return Ok(());
                    }
                    continue;
                }
                Tok::Ident(w) => {
                    if w != "final" {
                        start_of_param = false;
                    }
                    last = Some((w.as_str(), t.line));
                }
                _ => start_of_param = false,
            }
        }
    }
}
