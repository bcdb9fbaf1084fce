// Copyright 2026 The pqdecide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "pqdecide/relational/query.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {

const char* ComparatorSymbol(Comparator c) {
  switch (c) {
    case Comparator::kEq:
      return "=";
    case Comparator::kLike:
      return "LIKE";
    case Comparator::kLt:
      return "<";
    case Comparator::kLe:
      return "<=";
    case Comparator::kGt:
      return ">";
    case Comparator::kGe:
      return ">=";
  }
  return "?";
}

const char* AggregateKindName(AggregateKind k) {
  switch (k) {
    case AggregateKind::kCount:
      return "COUNT";
    case AggregateKind::kSum:
      return "SUM";
    case AggregateKind::kMedian:
      return "MEDIAN";
  }
  return "?";
}

namespace {

enum class TokenType { kIdent, kNumber, kString, kSymbol, kEnd };

struct Token {
  TokenType type;
  std::string text;
  size_t pos;
};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

absl::StatusOr<std::vector<Token>> Tokenize(std::string_view s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const size_t start = i;
    if (IsIdentStart(c)) {
      while (i < s.size() && IsIdentChar(s[i])) ++i;
      out.push_back({TokenType::kIdent, std::string(s.substr(start, i - start)),
                     start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
               ((c == '-' || c == '+') && i + 1 < s.size() &&
                (std::isdigit(static_cast<unsigned char>(s[i + 1])) ||
                 s[i + 1] == '.'))) {
      ++i;
      while (i < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' ||
              s[i] == 'e' || s[i] == 'E' ||
              ((s[i] == '-' || s[i] == '+') &&
               (s[i - 1] == 'e' || s[i - 1] == 'E')))) {
        ++i;
      }
      out.push_back({TokenType::kNumber,
                     std::string(s.substr(start, i - start)), start});
    } else if (c == '\'' || c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == c) {
          if (i + 1 < s.size() && s[i + 1] == c) {
            text.push_back(c);
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        text.push_back(s[i++]);
      }
      if (!closed) {
        return absl::InvalidArgumentError(
            absl::StrCat("unterminated string starting at offset ", start));
      }
      out.push_back({TokenType::kString, std::move(text), start});
    } else if (c == '<' || c == '>') {
      ++i;
      if (i < s.size() && s[i] == '=') ++i;
      out.push_back({TokenType::kSymbol,
                     std::string(s.substr(start, i - start)), start});
    } else if (c == '=' || c == '(' || c == ')' || c == '*' || c == ',' ||
               c == ';') {
      ++i;
      out.push_back({TokenType::kSymbol, std::string(1, c), start});
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unexpected character '", std::string(1, c),
                       "' at offset ", start));
    }
  }
  out.push_back({TokenType::kEnd, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  absl::StatusOr<ParsedQuery> Parse() {
    ParsedQuery q;
    RETURN_IF_ERROR(ExpectKeyword("SELECT"));
    ASSIGN_OR_RETURN(std::string agg, ExpectIdent("aggregate"));
    const std::string upper = absl::AsciiStrToUpper(agg);
    RETURN_IF_ERROR(ExpectSymbol("("));
    if (upper == "COUNT") {
      q.kind = AggregateKind::kCount;
      RETURN_IF_ERROR(ExpectSymbol("*"));
    } else if (upper == "SUM" || upper == "MEDIAN") {
      q.kind = upper == "SUM" ? AggregateKind::kSum : AggregateKind::kMedian;
      ASSIGN_OR_RETURN(q.attribute, ExpectIdent("attribute"));
    } else {
      return Error(absl::StrCat("unsupported aggregate '", agg, "'"));
    }
    RETURN_IF_ERROR(ExpectSymbol(")"));
    RETURN_IF_ERROR(ExpectKeyword("FROM"));
    ASSIGN_OR_RETURN(q.table, ExpectIdent("table name"));
    if (PeekKeyword("WHERE")) {
      ++pos_;
      while (true) {
        ASSIGN_OR_RETURN(PredicateAtom atom, ParseAtom());
        q.atoms.push_back(std::move(atom));
        if (!PeekKeyword("AND")) break;
        ++pos_;
      }
    }
    if (Peek().type == TokenType::kSymbol && Peek().text == ";") ++pos_;
    if (Peek().type != TokenType::kEnd) {
      return Error(absl::StrCat("unexpected trailing input '", Peek().text,
                                "'"));
    }
    return q;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }

  absl::Status Error(const std::string& msg) const {
    return absl::InvalidArgumentError(
        absl::StrCat("query parse error at offset ", Peek().pos, ": ", msg));
  }

  bool PeekKeyword(const char* kw) const {
    return Peek().type == TokenType::kIdent &&
           absl::EqualsIgnoreCase(Peek().text, kw);
  }

  absl::Status ExpectKeyword(const char* kw) {
    if (!PeekKeyword(kw)) return Error(absl::StrCat("expected ", kw));
    ++pos_;
    return absl::OkStatus();
  }

  absl::Status ExpectSymbol(const char* sym) {
    if (Peek().type != TokenType::kSymbol || Peek().text != std::string_view(sym)) {
      return Error(absl::StrCat("expected '", sym, "'"));
    }
    ++pos_;
    return absl::OkStatus();
  }

  absl::StatusOr<std::string> ExpectIdent(const char* what) {
    if (Peek().type != TokenType::kIdent) {
      return Error(absl::StrCat("expected ", what));
    }
    return tokens_[pos_++].text;
  }

  absl::StatusOr<PredicateAtom> ParseAtom() {
    PredicateAtom atom;
    ASSIGN_OR_RETURN(atom.attribute, ExpectIdent("attribute in WHERE"));
    const Token& op = Peek();
    if (op.type == TokenType::kIdent && absl::EqualsIgnoreCase(op.text, "LIKE")) {
      atom.op = Comparator::kLike;
    } else if (op.type == TokenType::kSymbol && op.text == "=") {
      atom.op = Comparator::kEq;
    } else if (op.type == TokenType::kSymbol && op.text == "<") {
      atom.op = Comparator::kLt;
    } else if (op.type == TokenType::kSymbol && op.text == "<=") {
      atom.op = Comparator::kLe;
    } else if (op.type == TokenType::kSymbol && op.text == ">") {
      atom.op = Comparator::kGt;
    } else if (op.type == TokenType::kSymbol && op.text == ">=") {
      atom.op = Comparator::kGe;
    } else {
      return Error("expected comparison operator");
    }
    ++pos_;
    const Token& value = Peek();
    if (value.type == TokenType::kString) {
      atom.constant = value.text;
    } else if (value.type == TokenType::kNumber) {
      double d = 0;
      if (!absl::SimpleAtod(value.text, &d) || std::isnan(d)) {
        return Error(absl::StrCat("bad number '", value.text, "'"));
      }
      atom.constant = d;
    } else {
      return Error("expected a number or quoted string");
    }
    ++pos_;
    return atom;
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

// Saturating conversion keeping clear of the int64 extremes, so that the
// +/-1 adjustments below cannot overflow.
int64_t ClampToInt(double v) {
  constexpr double kLimit = 4.0e18;
  if (v >= kLimit) return static_cast<int64_t>(kLimit);
  if (v <= -kLimit) return -static_cast<int64_t>(kLimit);
  return static_cast<int64_t>(v);
}

std::string ConstantAsLabel(const Constant& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  const double d = std::get<double>(c);
  if (d == std::floor(d) && std::abs(d) < 1e15) {
    return absl::StrCat(static_cast<int64_t>(d));
  }
  return absl::StrCat(d);
}

}  // namespace

absl::StatusOr<ParsedQuery> ParseQuery(std::string_view text) {
  ASSIGN_OR_RETURN(std::vector<Token> tokens, Tokenize(text));
  return Parser(std::move(tokens)).Parse();
}

void Predicate::Restrict(size_t column, int64_t lo, int64_t hi) {
  for (ColumnRange& r : ranges_) {
    if (r.column == column) {
      r.lo = std::max(r.lo, lo);
      r.hi = std::min(r.hi, hi);
      return;
    }
  }
  ranges_.push_back({column, lo, hi});
  std::sort(ranges_.begin(), ranges_.end(),
            [](const ColumnRange& a, const ColumnRange& b) {
              return a.column < b.column;
            });
}

bool Predicate::MatchesNothing() const {
  return std::any_of(ranges_.begin(), ranges_.end(),
                     [](const ColumnRange& r) { return r.empty(); });
}

bool Predicate::MatchesRow(const std::vector<int64_t>& row) const {
  for (const ColumnRange& r : ranges_) {
    if (!r.Contains(row[r.column])) return false;
  }
  return true;
}

ColumnRange Predicate::RangeFor(size_t column) const {
  for (const ColumnRange& r : ranges_) {
    if (r.column == column) return r;
  }
  return ColumnRange{column, INT64_MIN, INT64_MAX};
}

absl::StatusOr<Predicate> Predicate::FromAtoms(
    const Schema& schema, const std::vector<PredicateAtom>& atoms) {
  Predicate p;
  for (const PredicateAtom& atom : atoms) {
    std::optional<size_t> idx = schema.IndexOf(atom.attribute);
    if (!idx) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown attribute '", atom.attribute, "' in WHERE"));
    }
    const AttributeDomain& dom = schema.attribute(*idx).domain;
    if (dom.is_categorical()) {
      if (atom.op != Comparator::kEq && atom.op != Comparator::kLike) {
        return absl::InvalidArgumentError(absl::StrCat(
            "operator ", ComparatorSymbol(atom.op),
            " is not allowed on categorical attribute '", atom.attribute, "'"));
      }
      std::optional<int64_t> code = dom.CodeOf(ConstantAsLabel(atom.constant));
      if (code) {
        p.Restrict(*idx, *code, *code);
      } else {
        p.Restrict(*idx, 1, 0);  // unknown label matches nothing
      }
      continue;
    }

    double c = 0;
    if (const auto* d = std::get_if<double>(&atom.constant)) {
      c = *d;
    } else if (!absl::SimpleAtod(std::get<std::string>(atom.constant), &c) ||
               std::isnan(c)) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", atom.attribute,
                       "' is an integer but was compared with '",
                       std::get<std::string>(atom.constant), "'"));
    }
    switch (atom.op) {
      case Comparator::kEq:
      case Comparator::kLike:
        if (c == std::floor(c)) {
          p.Restrict(*idx, ClampToInt(c), ClampToInt(c));
        } else {
          p.Restrict(*idx, 1, 0);
        }
        break;
      case Comparator::kLt:
        p.Restrict(*idx, INT64_MIN, ClampToInt(std::ceil(c)) - 1);
        break;
      case Comparator::kLe:
        p.Restrict(*idx, INT64_MIN, ClampToInt(std::floor(c)));
        break;
      case Comparator::kGt:
        p.Restrict(*idx, ClampToInt(std::floor(c)) + 1, INT64_MAX);
        break;
      case Comparator::kGe:
        p.Restrict(*idx, ClampToInt(std::ceil(c)), INT64_MAX);
        break;
    }
  }
  return p;
}

AggregateQuery AggregateQuery::Count(Predicate predicate) {
  return AggregateQuery(AggregateKind::kCount, 0, std::move(predicate));
}

namespace {
absl::Status CheckAggregateAttribute(const Schema& schema, size_t attribute) {
  if (attribute >= schema.size()) {
    return absl::InvalidArgumentError("aggregate attribute index out of range");
  }
  const Attribute& a = schema.attribute(attribute);
  if (!a.domain.is_integer()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "aggregate attribute '", a.name, "' must be an integer attribute"));
  }
  if (a.domain.integer().min < 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "aggregate attribute '", a.name, "' must have a nonnegative domain"));
  }
  return absl::OkStatus();
}
}  // namespace

absl::StatusOr<AggregateQuery> AggregateQuery::Sum(const Schema& schema,
                                                   size_t attribute,
                                                   Predicate predicate) {
  RETURN_IF_ERROR(CheckAggregateAttribute(schema, attribute));
  AggregateQuery q(AggregateKind::kSum, attribute, std::move(predicate));
  q.text_ = RenderQuery(q, schema);
  return q;
}

absl::StatusOr<AggregateQuery> AggregateQuery::Median(const Schema& schema,
                                                      size_t attribute,
                                                      Predicate predicate) {
  RETURN_IF_ERROR(CheckAggregateAttribute(schema, attribute));
  AggregateQuery q(AggregateKind::kMedian, attribute, std::move(predicate));
  q.text_ = RenderQuery(q, schema);
  return q;
}

absl::StatusOr<AggregateQuery> BindQuery(const ParsedQuery& parsed,
                                         const Schema& schema) {
  ASSIGN_OR_RETURN(Predicate pred, Predicate::FromAtoms(schema, parsed.atoms));
  if (parsed.kind == AggregateKind::kCount) {
    AggregateQuery q = AggregateQuery::Count(std::move(pred));
    q.set_text(RenderQuery(q, schema, parsed.table));
    return q;
  }
  std::optional<size_t> idx = schema.IndexOf(parsed.attribute);
  if (!idx) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown aggregate attribute '", parsed.attribute, "'"));
  }
  if (parsed.kind == AggregateKind::kSum) {
    return AggregateQuery::Sum(schema, *idx, std::move(pred));
  }
  return AggregateQuery::Median(schema, *idx, std::move(pred));
}

absl::StatusOr<AggregateQuery> ParseAndBindQuery(std::string_view text,
                                                 const Schema& schema) {
  ASSIGN_OR_RETURN(ParsedQuery parsed, ParseQuery(text));
  ASSIGN_OR_RETURN(AggregateQuery q, BindQuery(parsed, schema));
  q.set_text(std::string(absl::StripAsciiWhitespace(
      absl::string_view(text.data(), text.size()))));
  return q;
}

std::string RenderQuery(const AggregateQuery& q, const Schema& schema,
                        std::string_view table) {
  std::string out = absl::StrCat("SELECT ", AggregateKindName(q.kind()), "(");
  if (q.kind() == AggregateKind::kCount) {
    out += "*";
  } else {
    out += schema.attribute(q.attribute()).name;
  }
  absl::StrAppend(&out, ") FROM ", std::string(table));

  std::vector<std::string> atoms;
  for (const ColumnRange& r : q.predicate().ranges()) {
    const Attribute& a = schema.attribute(r.column);
    if (a.domain.is_categorical()) {
      const auto& values = a.domain.categorical().values;
      // Unknown labels and multi-code ranges have no exact text form; an
      // empty label is the closest we can print.
      const bool single = r.lo == r.hi && r.lo >= 0 &&
                          r.lo < static_cast<int64_t>(values.size());
      atoms.push_back(absl::StrCat(
          a.name, " LIKE '", single ? values[static_cast<size_t>(r.lo)] : "",
          "'"));
      continue;
    }
    if (r.lo == r.hi) {
      atoms.push_back(absl::StrCat(a.name, " = ", r.lo));
      continue;
    }
    if (r.lo != INT64_MIN) atoms.push_back(absl::StrCat(a.name, " >= ", r.lo));
    if (r.hi != INT64_MAX) atoms.push_back(absl::StrCat(a.name, " <= ", r.hi));
  }
  if (!atoms.empty()) {
    absl::StrAppend(&out, " WHERE ", absl::StrJoin(atoms, " AND "));
  }
  return out;
}

}  // namespace pqdecide
