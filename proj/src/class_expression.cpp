#include "owlport/class_expression.hpp"

#include <algorithm>
#include <stdexcept>

namespace owlport {

ClassExpression ClassExpression::named(Iri iri) {
    if (iri == vocab::top()) return top();
    if (iri == vocab::bottom()) return bottom();
    ClassExpression e;
    e.kind_ = Kind::Named;
    e.iri_ = std::move(iri);
    return e;
}

ClassExpression ClassExpression::top() {
    ClassExpression e;
    e.kind_ = Kind::Top;
    e.iri_ = vocab::top();
    return e;
}

ClassExpression ClassExpression::bottom() {
    ClassExpression e;
    e.kind_ = Kind::Bottom;
    e.iri_ = vocab::bottom();
    return e;
}

ClassExpression ClassExpression::conjunction(std::vector<ClassExpression> operands) {
    std::vector<std::pair<std::string, ClassExpression>> keyed;
    for (auto& op : operands) {
        if (op.kind_ == Kind::Conjunction) {
            for (auto& inner : op.children_) keyed.emplace_back(inner.to_functional(), std::move(inner));
        } else {
            keyed.emplace_back(op.to_functional(), std::move(op));
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    if (keyed.empty()) throw std::invalid_argument("conjunction needs at least one operand");
    if (keyed.size() == 1) return std::move(keyed.front().second);

    ClassExpression e;
    e.kind_ = Kind::Conjunction;
    e.children_.reserve(keyed.size());
    for (auto& [key, op] : keyed) e.children_.push_back(std::move(op));
    return e;
}

ClassExpression ClassExpression::some(Iri property, ClassExpression filler) {
    ClassExpression e;
    e.kind_ = Kind::Existential;
    e.iri_ = std::move(property);
    e.children_.push_back(std::move(filler));
    return e;
}

const Iri& ClassExpression::iri() const {
    if (!is_atomic()) throw std::logic_error("class expression is not atomic");
    return iri_;
}

const Iri& ClassExpression::property() const {
    if (kind_ != Kind::Existential) throw std::logic_error("class expression is not an existential");
    return iri_;
}

const ClassExpression& ClassExpression::filler() const {
    if (kind_ != Kind::Existential) throw std::logic_error("class expression is not an existential");
    return children_.front();
}

const std::vector<ClassExpression>& ClassExpression::operands() const {
    if (kind_ != Kind::Conjunction) throw std::logic_error("class expression is not a conjunction");
    return children_;
}

std::string ClassExpression::to_functional() const {
    switch (kind_) {
    case Kind::Top:
        return "owl:Thing";
    case Kind::Bottom:
        return "owl:Nothing";
    case Kind::Named:
        return "<" + iri_.str() + ">";
    case Kind::Existential:
        return "ObjectSomeValuesFrom(<" + iri_.str() + "> " + children_.front().to_functional() + ")";
    case Kind::Conjunction: {
        std::string out = "ObjectIntersectionOf(";
        for (std::size_t i = 0; i < children_.size(); ++i) {
            if (i) out += ' ';
            out += children_[i].to_functional();
        }
        return out + ")";
    }
    }
    return {};
}

void ClassExpression::collect_classes(std::vector<Iri>& out) const {
    if (kind_ == Kind::Named) out.push_back(iri_);
    for (const auto& c : children_) c.collect_classes(out);
}

void ClassExpression::collect_properties(std::vector<Iri>& out) const {
    if (kind_ == Kind::Existential) out.push_back(iri_);
    for (const auto& c : children_) c.collect_properties(out);
}

}  // namespace owlport
