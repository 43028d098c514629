"""Census of the skew morphisms of Sym(5): automorphisms, core-free proper ones, and those with core Alt(5)."""

from skewprod.classify import enumerate_noncorefree_sym5


def main():
    rep = enumerate_noncorefree_sym5()
    for label, entry in rep.extra["extensions"].items():
        sizes = [c["size"] for c in entry.get("classes", [])]
        cents = [c["centralizer"] for c in entry.get("classes", [])]
        print(f"C = {label:7s} |G| = {entry['G_order']:4d}  complements = {entry['complements']:3d}"
              f"  class sizes = {sizes}  centralisers = {cents}")
    g = rep.extra["grand_total"]
    print(f"core Alt(5): {g['core_Alt5']}  core-free: {g['core_free']}  automorphisms: {g['automorphisms']}"
          f"  sum: {g['sum']}")
    print("all claims pass" if rep.passed else f"failed: {[c.id for c in rep.failed_claims()]}")


if __name__ == "__main__":
    main()
