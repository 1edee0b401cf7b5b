//! Token stream for the island parser.
//!
//! Comments vanish and string, char and text-block literals collapse into a
//! single opaque token, so nothing inside them can be mistaken for an
//! annotation site.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Punct(char),
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: u32,
    pub end_line: u32,
}

impl Token {
    pub fn is_punct(&self, c: char) -> bool {
        self.tok == Tok::Punct(c)
    }

    pub fn ident(&self) -> Option<&str> {
        match &self.tok {
            Tok::Ident(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_ident(&self, word: &str) -> bool {
        self.ident() == Some(word)
    }
}

pub(crate) struct Lexed {
    pub tokens: Vec<Token>,
    pub line_count: u32,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    /// Consumes one char, folding `\r\n` and lone `\r` into a single line break.
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        match c {
            '\n' => self.line += 1,
            '\r' if self.peek() != Some('\n') => self.line += 1,
            _ => {}
        }
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

pub(crate) fn lex(text: &str) -> Lexed {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
    };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let line = cur.line;
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '/' {
            cur.bump();
            if cur.eat('/') {
                while let Some(n) = cur.peek() {
                    if n == '\n' || n == '\r' {
                        break;
                    }
                    cur.bump();
                }
                continue;
            }
            if cur.eat('*') {
                let mut prev_star = false;
                while let Some(n) = cur.bump() {
                    if prev_star && n == '/' {
                        break;
                    }
                    prev_star = n == '*';
                }
                continue;
            }
            tokens.push(Token {
                tok: Tok::Punct('/'),
                line,
                end_line: line,
            });
            continue;
        }
        if c == '"' {
            cur.bump();
            if cur.peek() == Some('"') {
                cur.bump();
                if cur.eat('"') {
                    skip_text_block(&mut cur);
                }
                // otherwise it was the empty string ""
            } else {
                skip_quoted(&mut cur, '"');
            }
            tokens.push(Token {
                tok: Tok::Literal,
                line,
                end_line: cur.line,
            });
            continue;
        }
        if c == '\'' {
            cur.bump();
            skip_quoted(&mut cur, '\'');
            tokens.push(Token {
                tok: Tok::Literal,
                line,
                end_line: line,
            });
            continue;
        }
        if is_ident_start(c) {
            let mut word = String::new();
            while let Some(n) = cur.peek() {
                if !is_ident_continue(n) {
                    break;
                }
                word.push(n);
                cur.bump();
            }
            tokens.push(Token {
                tok: Tok::Ident(word),
                line,
                end_line: line,
            });
            continue;
        }
        if c.is_ascii_digit() {
            while let Some(n) = cur.peek() {
                if !(n.is_ascii_alphanumeric() || n == '_' || n == '.') {
                    break;
                }
                cur.bump();
            }
            tokens.push(Token {
                tok: Tok::Literal,
                line,
                end_line: line,
            });
            continue;
        }
        cur.bump();
        tokens.push(Token {
            tok: Tok::Punct(c),
            line,
            end_line: line,
        });
    }

    Lexed {
        tokens,
        line_count: line_count(text),
    }
}

/// Plain string or char literal; these cannot span lines, so a missing
/// closing quote ends the literal at the line break.
fn skip_quoted(cur: &mut Cursor<'_>, quote: char) {
    while let Some(n) = cur.peek() {
        if n == '\n' || n == '\r' {
            return;
        }
        cur.bump();
        if n == '\\' {
            if let Some(e) = cur.peek() {
                if e != '\n' && e != '\r' {
                    cur.bump();
                }
            }
        } else if n == quote {
            return;
        }
    }
}

fn skip_text_block(cur: &mut Cursor<'_>) {
    let mut quotes = 0;
    while let Some(n) = cur.bump() {
        if n == '\\' {
            cur.bump();
            quotes = 0;
        } else if n == '"' {
            quotes += 1;
            if quotes == 3 {
                return;
            }
        } else {
            quotes = 0;
        }
    }
}

/// Number of source lines; a trailing line terminator does not open a new line.
pub(crate) fn line_count(text: &str) -> u32 {
    let bytes = text.as_bytes();
    let mut lines = 1u32;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\n' => lines += 1,
            b'\r' if bytes.get(i + 1) != Some(&b'\n') => lines += 1,
            _ => {}
        }
        i += 1;
    }
    if matches!(bytes.last(), Some(b'\n' | b'\r')) {
        lines -= 1;
    }
    lines.max(1)
}
