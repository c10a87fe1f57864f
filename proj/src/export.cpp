#include "monotile/export.hpp"

#include "monotile/substitution.hpp"
#include "parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace monotile {

namespace {

// Tiles per formatting block; bounds the text buffered before writing.
constexpr std::size_t kBlock = 1 << 14;

// Formats items [0, n) with fn(i, out) in parallel blocks, writing in order.
template <class Fn>
void write_ordered(std::ostream& os, std::size_t n, unsigned threads, Fn&& fn)
{
    threads = std::max(1u, threads);
    std::vector<std::string> parts(threads);
    for (std::size_t block = 0; block < n; block += kBlock) {
        const std::size_t len = std::min(kBlock, n - block);
        const std::size_t chunk = (len + threads - 1) / threads;
        detail::parallel_for(threads, threads, [&](std::size_t tb, std::size_t te) {
            for (std::size_t t = tb; t < te; ++t) {
                std::string& out = parts[t];
                out.clear();
                const std::size_t begin = block + std::min(len, t * chunk);
                const std::size_t end = block + std::min(len, t * chunk + chunk);
                for (std::size_t i = begin; i < end; ++i) fn(i, out);
            }
        });
        for (const auto& p : parts) os << p;
    }
}

void append_xy(std::string& out, const Vec2& p, int precision, char sep = ',')
{
    out += format_double(p.x, precision);
    out += sep;
    out += format_double(p.y, precision);
}

// Rotation by k*30 degrees on float coordinates, from an exact table.
Vec2 rotate(const Vec2& p, int k)
{
    static const std::array<Vec2, 12> cs = [] {
        std::array<Vec2, 12> t{};
        for (int i = 0; i < 12; ++i) t[static_cast<std::size_t>(i)] = to_xy(unit(i));
        return t;
    }();
    const Vec2& r = cs[static_cast<std::size_t>(mod12(k))];
    return {r.x * p.x - r.y * p.y, r.y * p.x + r.x * p.y};
}

} // namespace

std::string format_double(double v, int precision)
{
    if (std::isnan(v)) return "NaN";
    if (v == 0.0) v = 0.0; // drop the sign of -0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general,
                                   std::clamp(precision, 1, 17));
    return std::string(buf.data(), res.ptr);
}

Window Window::from_corners(double xa, double ya, double xb, double yb)
{
    Window w{std::min(xa, xb), std::min(ya, yb), std::max(xa, xb), std::max(ya, yb)};
    if (!(w.x1 > w.x0) || !(w.y1 > w.y0)) throw std::invalid_argument("window must have positive width and height");
    return w;
}

void export_csv(std::ostream& os, const Cluster& c, const RenderOptions& opts)
{
    os << "tile,vertex,x,y\n";
    write_ordered(os, c.size(), opts.threads, [&](std::size_t i, std::string& out) {
        const TileVertices v = tile_vertices(c.tiles()[i]);
        const std::string tile = std::to_string(i + 1);
        for (std::size_t k = 0; k < v.size(); ++k) {
            out += tile;
            out += ',';
            out += std::to_string(k + 1);
            out += ',';
            append_xy(out, to_xy(v[k]), opts.precision);
            out += '\n';
        }
    });
}

void export_legacy_rows(std::ostream& os, const Cluster& c, const RenderOptions& opts)
{
    write_ordered(os, c.size(), opts.threads, [&](std::size_t i, std::string& out) {
        const TileVertices v = tile_vertices(c.tiles()[i]);
        for (std::size_t k = 0; k <= v.size(); ++k) {
            append_xy(out, to_xy(v[k % v.size()]), opts.precision);
            out += '\n';
        }
        out += "NaN,NaN\n";
    });
}

void export_transforms(std::ostream& os, const Cluster& c, std::optional<int> iteration)
{
    os << "{\n  \"format\": \"monotile-transforms\",\n  \"version\": 1,\n";
    os << "  \"iteration\": " << (iteration ? std::to_string(*iteration) : std::string("null")) << ",\n";
    os << "  \"tile_count\": " << c.size() << ",\n";
    os << "  \"tile_fields\": [\"reflect\", \"rot\", \"a\", \"b\", \"c\", \"d\"],\n";
    os << "  \"tiles\": [";
    std::size_t i = 0;
    for (const auto& t : c.tiles()) {
        os << (i++ == 0 ? "\n    [" : ",\n    [") << (t.reflect ? 1 : 0) << ',' << int(t.rot) << ',' << t.trans.a
           << ',' << t.trans.b << ',' << t.trans.c << ',' << t.trans.d << ']';
    }
    os << (c.empty() ? "],\n" : "\n  ],\n");
    os << "  \"keys\": ";
    if (!c.has_keys()) {
        os << "null\n";
    }
    else {
        os << '[';
        for (std::size_t k = 0; k < 4; ++k) {
            const auto& a = (*c.keys())[k];
            os << (k == 0 ? "\n    " : ",\n    ") << "{\"label\": " << a.label << ", \"tile\": " << a.tile_ordinal
               << ", \"vertex\": " << a.vertex_index << '}';
        }
        os << "\n  ]\n";
    }
    os << "}\n";
}

TransformDocument load_transforms(std::istream& is)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(is);
    }
    catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("transform document is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("format") != "monotile-transforms") throw FormatError("unexpected format tag");
        if (doc.at("version") != 1) throw FormatError("unsupported transform document version");
        TransformDocument out;
        if (!doc.at("iteration").is_null()) out.iteration = doc.at("iteration").get<int>();
        const auto& tiles = doc.at("tiles");
        if (!tiles.is_array()) throw FormatError("'tiles' must be an array");
        std::vector<Isometry> isos;
        isos.reserve(tiles.size());
        for (const auto& row : tiles) {
            if (!row.is_array() || row.size() != 6) throw FormatError("each tile needs 6 fields");
            const int reflect = row[0].get<int>();
            const int rot = row[1].get<int>();
            if ((reflect != 0 && reflect != 1) || rot < 0 || rot > 11) throw FormatError("tile field out of range");
            isos.push_back({CycNum{row[2].get<std::int64_t>(), row[3].get<std::int64_t>(),
                                   row[4].get<std::int64_t>(), row[5].get<std::int64_t>()},
                            static_cast<std::int8_t>(rot), reflect == 1});
        }
        if (doc.at("tile_count").get<std::uint64_t>() != isos.size()) throw FormatError("tile_count mismatch");
        std::optional<KeySet> keys;
        const auto& jk = doc.at("keys");
        if (!jk.is_null()) {
            if (!jk.is_array() || jk.size() != 4) throw FormatError("'keys' must hold four anchors");
            KeySet ks{};
            for (std::size_t k = 0; k < 4; ++k)
                ks[k] = {jk[k].at("label").get<int>(), jk[k].at("tile").get<std::uint64_t>(),
                         jk[k].at("vertex").get<int>()};
            keys = ks;
        }
        out.cluster = Cluster(std::move(isos), keys);
        return out;
    }
    catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed transform document: ") + e.what());
    }
    catch (const ClusterError& e) {
        throw FormatError(std::string("malformed transform document: ") + e.what());
    }
}

Vec2 tile_center(const Isometry& iso)
{
    Vec2 c = prototile_bounding_circle().center;
    if (iso.reflect) c.x = -c.x;
    c = rotate(c, iso.rot);
    const Vec2 t = to_xy(iso.trans);
    return {c.x + t.x, c.y + t.y};
}

std::vector<std::size_t> visible_tiles(const Cluster& c, const Window& w)
{
    const double r = prototile_bounding_circle().radius;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec2 p = tile_center(c.tiles()[i]);
        const double dx = std::max({w.x0 - p.x, 0.0, p.x - w.x1});
        const double dy = std::max({w.y0 - p.y, 0.0, p.y - w.y1});
        if (dx * dx + dy * dy <= r * r) out.push_back(i);
    }
    return out;
}

void render_svg(std::ostream& os, const Cluster& c, const RenderOptions& opts)
{
    std::vector<std::size_t> shown;
    if (opts.window) {
        shown = visible_tiles(c, *opts.window);
    }
    else {
        shown.resize(c.size());
        for (std::size_t i = 0; i < shown.size(); ++i) shown[i] = i;
    }
    if (shown.size() > opts.max_tiles)
        throw ResourceLimitError("render needs " + std::to_string(shown.size()) + " tiles, above the max_tiles limit of "
                                     + std::to_string(opts.max_tiles),
                                 shown.size(), opts.max_tiles);

    // Plane y points up; SVG y points down.
    const auto svg = [](const Vec2& p) { return Vec2{p.x, -p.y}; };

    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool first = true;
    for (std::size_t i : shown) {
        for (const auto& v : tile_vertices(c.tiles()[i])) {
            const Vec2 p = svg(to_xy(v));
            if (first) {
                x0 = x1 = p.x;
                y0 = y1 = p.y;
                first = false;
            }
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    }
    const double pad = opts.stroke_width / 2;
    const int prec = opts.precision;
    const auto num = [prec](double v) { return format_double(v, prec); };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(x0 - pad) << ' '
       << num(y0 - pad) << ' ' << num(x1 - x0 + 2 * pad) << ' ' << num(y1 - y0 + 2 * pad) << "\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << num(opts.stroke_width)
       << "\" stroke-linejoin=\"round\">\n";
    write_ordered(os, shown.size(), opts.threads, [&](std::size_t k, std::string& out) {
        const TileVertices v = tile_vertices(c.tiles()[shown[k]]);
        out += "<path d=\"M";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i > 0) out += " L";
            append_xy(out, svg(to_xy(v[i])), prec, ' ');
        }
        out += " Z\"/>\n";
    });
    os << "</g>\n";

    if (opts.show_keypoints) {
        const double r = 2 * opts.stroke_width;
        const auto polyline = [&](const std::vector<CycNum>& pts, const char* color) {
            os << "<g fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(opts.stroke_width) << "\">\n";
            os << "<polyline points=\"";
            for (std::size_t i = 0; i <= pts.size(); ++i) {
                const Vec2 p = svg(to_xy(pts[i % pts.size()]));
                os << (i ? " " : "") << num(p.x) << ',' << num(p.y);
            }
            os << "\"/>\n";
            for (const auto& q : pts) {
                const Vec2 p = svg(to_xy(q));
                os << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"" << num(r) << "\"/>\n";
            }
            os << "</g>\n";
        };
        for (std::size_t i = 0; i + 4 <= opts.candidate_keys.size(); i += 4)
            polyline({opts.candidate_keys.begin() + static_cast<std::ptrdiff_t>(i),
                      opts.candidate_keys.begin() + static_cast<std::ptrdiff_t>(i + 4)},
                     "red");
        if (c.has_keys()) {
            std::vector<CycNum> keys;
            for (int label = 1; label <= 4; ++label) keys.push_back(key_point(c, label));
            polyline(keys, "blue");
        }
    }
    os << "</svg>\n";
}

} // namespace monotile
