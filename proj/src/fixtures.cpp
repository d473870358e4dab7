#include "legendre_dual/fixtures.hpp"

namespace ldual {

namespace {

const char* kEucl = R"SC(# Euclidean kinetic energy on the classical tangent bundle of R^2.
[scenario]
name = "eucl"
mode = "classical"
m = 2
r = 2

[lagrangian]
L = "y1^2/2 + y2^2/2"

[hamiltonian]
H = "p1^2/2 + p2^2/2"

[connection]
[connection_star]
[distinguished]
[distinguished_star]

[mechanics]
G.1 = "0"
G.2 = "0"

[mechanics_star]
G.1 = "0"
G.2 = "0"

[sampling]
count = 200
seed = 1
x.1 = [-1, 1]
x.2 = [-1, 1]
y.1 = [-2, 2]
y.2 = [-2, 2]
)SC";

const char* kQuad = R"SC(# L = g(y, y)/2 with g = [[2, 1], [1, 2]].
[scenario]
name = "quad"
mode = "classical"
m = 2
r = 2

[lagrangian]
L = "y1^2 + y1*y2 + y2^2"

[hamiltonian]
H = "(p1^2 - p1*p2 + p2^2)/3"

[connection]
[connection_star]

[mechanics]
G.1 = "0"
G.2 = "0"

[mechanics_star]
g.1.1 = "2/3"
g.1.2 = "-1/3"
g.2.1 = "-1/3"
g.2.2 = "2/3"
G.1 = "0"
G.2 = "0"

[sampling]
count = 200
seed = 1
x.1 = [-1, 1]
x.2 = [-1, 1]
y.1 = [-2, 2]
y.2 = [-2, 2]
)SC";

const char* kExp = R"SC([scenario]
name = "exp"
mode = "classical"
m = 1
r = 1

[lagrangian]
L = "exp(y1)"

[hamiltonian]
H = "p1*log(p1) - p1"

[sampling]
count = 200
seed = 1
x.1 = [-1, 1]
y.1 = [-2, 1.5]
p.1 = [0.2, 5]
)SC";

const char* kQuart = R"SC(# No closed Hamiltonian: H comes from Newton inversion of y^3 + y = p.
[scenario]
name = "quart"
mode = "classical"
m = 1
r = 1

[lagrangian]
L = "y1^4/4 + y1^2/2"

[sampling]
count = 200
seed = 1
x.1 = [-1, 1]
y.1 = [-3, 3]
p.1 = [-3, 3]
)SC";

const char* kSo3 = R"SC(# Rotation algebra: zero anchor, structure constants eps_{alpha beta gamma}.
[scenario]
name = "so3"
mode = "general"
m = 3
p = 3
r = 3

[algebroid]
Lstruct.3.1.2 = "1"
Lstruct.3.2.1 = "-1"
Lstruct.1.2.3 = "1"
Lstruct.1.3.2 = "-1"
Lstruct.2.3.1 = "1"
Lstruct.2.1.3 = "-1"

[lagrangian]
L = "(y1^2 + y2^2 + y3^2)/2"

[hamiltonian]
H = "(p1^2 + p2^2 + p3^2)/2"

[sampling]
count = 200
seed = 1
x.1 = [-1, 1]
x.2 = [-1, 1]
x.3 = [-1, 1]
y.1 = [-1, 1]
y.2 = [-1, 1]
y.3 = [-1, 1]
)SC";

const char* kAct = R"SC(# Anchor columns d1 and chi1 d1 + d2, whose bracket is d1.
[scenario]
name = "act"
mode = "general"
m = 2
p = 2
r = 2

[algebroid]
rho.1.1 = "1"
rho.1.2 = "chi1"
rho.2.2 = "1"
Lstruct.1.1.2 = "1"
Lstruct.1.2.1 = "-1"

[lagrangian]
L = "y1^2/2 + y2^2/2"

[hamiltonian]
H = "p1^2/2 + p2^2/2"

[sampling]
count = 200
seed = 1
x.1 = [-1, 1]
x.2 = [-1, 1]
y.1 = [-2, 2]
y.2 = [-2, 2]
)SC";

const char* kActLag = R"SC(# Base-dependent Lagrangian on the anchored algebroid.
[scenario]
name = "act-lag"
mode = "general"
m = 2
p = 2
r = 2

[algebroid]
rho.1.1 = "1"
rho.1.2 = "chi1"
rho.2.2 = "1"
Lstruct.1.1.2 = "1"
Lstruct.1.2.1 = "-1"

[lagrangian]
L = "exp(x1)*y1^2/2 + y2^2/2 + x2*y2"

[hamiltonian]
H = "exp(-x1)*p1^2/2 + (p2 - x2)^2/2"

[sampling]
count = 200
seed = 1
x.1 = [-1, 1]
x.2 = [-1, 1]
y.1 = [-2, 2]
y.2 = [-2, 2]
)SC";

const char* kConn = R"SC(# Quadratic Lagrangian with a nonlinear connection Gamma^1_2 = x1 y2 and its
# Legendre dual on E*, plus matched distinguished connections and semisprays.
[scenario]
name = "conn"
mode = "classical"
m = 2
r = 2

[lagrangian]
L = "y1^2 + y1*y2 + y2^2"

[hamiltonian]
H = "(p1^2 - p1*p2 + p2^2)/3"

[connection]
Gamma.1.2 = "x1*y2"

[connection_star]
Gamma.1.2 = "2*x1*(p1 - 2*p2)/3"
Gamma.2.2 = "x1*(p1 - 2*p2)/3"

[distinguished]
Hc.1.1.2 = "x1"
Hc.2.2.1 = "y2"
Hv.1.2.1 = "y1"
Hv.2.1.2 = "x2"
Vc.2.1.1 = "x2*y2"
Vc.1.2.2 = "1"
Vv.1.1.2 = "y1 + x1"
Vv.2.2.1 = "y2"

[distinguished_star]
Hc.1.1.2 = "x1"
Hc.2.2.1 = "-(p1 - 2*p2)/3"
Hv.1.1.1 = "-2*(2*p1 - p2)/9"
Hv.1.1.2 = "2*x2/3"
Hv.1.2.1 = "-(2*p1 - p2)/9"
Hv.1.2.2 = "4*x2/3"
Hv.2.1.1 = "4*(2*p1 - p2)/9"
Hv.2.1.2 = "-x2/3"
Hv.2.2.1 = "2*(2*p1 - p2)/9"
Hv.2.2.2 = "-2*x2/3"
Vc.1.1.2 = "-1/3"
Vc.1.2.2 = "2/3"
Vc.2.1.1 = "-2*x2*(p1 - 2*p2)/9"
Vc.2.2.1 = "x2*(p1 - 2*p2)/9"
Vv.1.1.1 = "-2*(p1 + 2*x1)/9"
Vv.1.1.2 = "-2*(p2 + x1)/9"
Vv.1.2.1 = "(5*p1 - 2*p2 + 8*x1)/9"
Vv.1.2.2 = "2*(p1 + 2*x1)/9"
Vv.2.1.1 = "2*(p2 + x1)/9"
Vv.2.1.2 = "(-2*p1 + 5*p2 + x1)/9"
Vv.2.2.1 = "-2*(p1 + 2*x1)/9"
Vv.2.2.2 = "-2*(p2 + x1)/9"

[mechanics]
G.1 = "x1*y2^2/2"
G.2 = "y1*y2"

[mechanics_star]
g.1.1 = "2/3"
g.1.2 = "-1/3"
g.2.1 = "-1/3"
g.2.2 = "2/3"
G.1 = "(p1 - 2*p2)*(p1*x1 - 2*p1 - 2*p2*x1 + p2)/9"
G.2 = "(p1 - 2*p2)*(p1*x1 - 8*p1 - 2*p2*x1 + 4*p2)/18"

[sampling]
count = 200
seed = 1
x.1 = [-1, 1]
x.2 = [-1, 1]
y.1 = [-2, 2]
y.2 = [-2, 2]
)SC";

std::string perturbed() {
    std::string t = kConn;
    auto replace = [&](const std::string& from, const std::string& to) {
        auto pos = t.find(from);
        t.replace(pos, from.size(), to);
    };
    replace("name = \"conn\"", "name = \"conn-perturbed\"");
    replace("# Quadratic Lagrangian with a nonlinear connection Gamma^1_2 = x1 y2 and its\n"
            "# Legendre dual on E*, plus matched distinguished connections and semisprays.\n",
            "# The conn fixture with every dual connection component shifted by 0.1.\n");
    replace("[connection_star]\n"
            "Gamma.1.2 = \"2*x1*(p1 - 2*p2)/3\"\n"
            "Gamma.2.2 = \"x1*(p1 - 2*p2)/3\"\n",
            "[connection_star]\n"
            "Gamma.1.1 = \"0.1\"\n"
            "Gamma.2.1 = \"0.1\"\n"
            "Gamma.1.2 = \"2*x1*(p1 - 2*p2)/3 + 0.1\"\n"
            "Gamma.2.2 = \"x1*(p1 - 2*p2)/3 + 0.1\"\n");
    return t;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = {
        {"eucl", "Euclidean L and H, zero connections, flat mechanics", kEucl},
        {"quad", "constant-Hessian quadratic L and its conjugate", kQuad},
        {"exp", "L = exp(y) with H = p log p - p", kExp},
        {"quart", "L = y^4/4 + y^2/2, Hamiltonian derived by Newton", kQuart},
        {"so3", "rotation algebra with zero anchor", kSo3},
        {"act", "two-dimensional algebroid with a non-constant anchor", kAct},
        {"act-lag", "base-dependent Lagrangian on the act algebroid", kActLag},
        {"conn", "quadratic L with dual nonlinear and distinguished connections", kConn},
        {"conn-perturbed", "conn with a deliberately wrong dual connection", perturbed()},
    };
    return all;
}

const Fixture* findFixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return &f;
    return nullptr;
}

}  // namespace ldual
