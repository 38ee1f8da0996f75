#include "tracktor/pipeline.hpp"

#include "tracktor/dsl.hpp"

namespace tracktor {

namespace {

// Tractor expressions whose X..X slot is P_{2k}; the free labels A (, B (, C))
// carry the X factors, outermost D first.
const char* kP4 =
    "section f4 : weight(2 - n/2)\n"
    "-Box(D[-A](f4))";

const char* kP6 =
    "section f6 : weight(3 - n/2)\n"
    "Box(D[-A](D[-B](f6)))"
    " + (2/(n-4)) * W[-A,+S,-B,+T] * D[-S](D[-T](f6))";

const char* kP8 =
    "section f8 : weight(4 - n/2)\n"
    "-Box(D[-A](D[-B](D[-C](f8))))"
    " - (2/(n-4)) * W[-A,+P,-B,+Q] * D[-P](D[-Q](D[-C](f8)))"
    " - (2/(n-4)) * W[-A,+P,-C,+Q] * D[-P](D[-B](D[-Q](f8)))"
    " - (8/((n-4)*(n-4)*(n-6))) * X[-A]"
    "   * W[+G,+P,-B,+F] * W[-F,-G,-C,+Q] * D[-P](D[-Q](f8))"
    " - (8/((n-4)*(n-4)*(n-6))) * X[-A]"
    "   * W[+G,+P,-C,+F] * W[-B,-G,-F,+Q] * D[-P](D[-Q](f8))"
    " - (8/((n-4)*(n-4)*(n-6))) * X[-A]"
    "   * W[+G,+P,+Q,+F] * W[-B,-G,-C,-F] * D[-P](D[-Q](f8))"
    " + (2/((n-4)*(n-6))) * X[-A]"
    "   * D[+E](W[-B,+P,-C,+Q] * D[-E](D[-P](D[-Q](f8))))"
    " + (4*(n-2)/((n-4)*(n-4)*(n-6))) * X[-A]"
    "   * W[-B,+P,-C,+Q] * W[-P,+S,-Q,+T] * D[-S](D[-T](f8))";

}  // namespace

TractorFormula library_formula(int k) {
    TractorFormula out;
    out.k = k;
    switch (k) {
        case 2:
            out.op = parse(kP4);
            out.slots = {free_tractor("A")};
            out.fkind = find_section("f4");
            break;
        case 3:
            out.op = parse(kP6);
            out.slots = {free_tractor("A"), free_tractor("B")};
            out.fkind = find_section("f6");
            break;
        case 4:
            out.op = parse(kP8);
            out.slots = {free_tractor("A"), free_tractor("B"), free_tractor("C")};
            out.fkind = find_section("f8");
            break;
        default:
            throw PipelineError("library_formula: k must be 2, 3 or 4");
    }
    return out;
}

}  // namespace tracktor
