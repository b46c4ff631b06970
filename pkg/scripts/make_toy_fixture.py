#!/usr/bin/env python3
"""Regenerate the bundled toy benchmark under fixtures/.

Fifty short astronomy articles in raw wikitext, twenty gold queries, and a
ready-to-run pipeline config. Everything is written from literal tables, so
the output is deterministic and the fixture files can be diffed after any
change here. The articles deliberately exercise the parser's corner cases:
aliases, underscore targets, section fragments, File:/Category: constructs,
repeated links, self-links, dangling targets, and one unclosed bracket.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

# (title, wikitext) pairs; sentences are newline-separated.
DOCS: list[tuple[str, str]] = [
    (
        "Mercury (planet)",
        "[[Mercury_(planet)|Mercury]] is the smallest [[Planet|planet]] in the [[Solar System]] "
        "and orbits closest to the [[Sun]].\n"
        "A year on Mercury lasts 88 Earth days.\n"
        "Its cratered surface resembles that of the [[Moon]].",
    ),
    (
        "Venus",
        "[[Venus]] is the hottest planet, wrapped in thick clouds of acid.\n"
        "It spins backwards compared with [[Earth]] and most other planets.\n"
        "From Earth it is the brightest object in the night sky after the [[Moon]].",
    ),
    (
        "Earth",
        "[[Earth]] is the third [[Planet|planet]] from the [[Sun]] and the only known home of life.\n"
        "Its single [[Natural satellite|natural satellite]] is the [[Moon]].\n"
        "Ocean [[Tide|tides]] on Earth follow the pull of the Moon and the Sun.",
    ),
    (
        "Mars",
        "[[Mars]] is the red planet, explored for signs of ancient water.\n"
        "Its two small moons are [[Phobos_(moon)|Phobos]] and Deimos.\n"
        "Dust storms on Mars can cover the whole planet for weeks.",
    ),
    (
        "Jupiter",
        "[[Jupiter]] is the largest planet of the [[Solar System]], famous for its Great Red Spot.\n"
        "[[Galileo Galilei]] found its four bright moons, including [[Io_(moon)|Io]] and "
        "[[Europa_(moon)|Europa]].\n"
        "[[File:Jupiter.jpg|thumb|Jupiter seen by a passing probe]] The [[Voyager program]] "
        "returned the first close images of its clouds.",
    ),
    (
        "Saturn",
        "[[Saturn]] is famous for bright rings made of ice and rock.\n"
        "Its largest moon is [[Titan_(moon)|Titan]], studied by [[Cassini-Huygens]].\n"
        "Like [[Jupiter]], Saturn is a gas giant.",
    ),
    (
        "Uranus",
        "[[Uranus]] is an ice giant that rolls around the [[Sun]] on its side.\n"
        "[[William Herschel]] discovered it in 1781 with a homemade [[Telescope|telescope]].\n"
        "Only [[Voyager 2]] has visited Uranus.",
    ),
    (
        "Neptune",
        "[[Neptune]] is the most distant giant planet of the [[Solar System]].\n"
        "Its large moon [[Triton_(moon)|Triton]] orbits backwards.\n"
        "Winds on Neptune are the fastest measured on any planet.",
    ),
    (
        "Sun",
        "The [[Sun]] is the star at the center of the [[Solar System]].\n"
        "Nearly all energy for life on [[Earth]] comes from the Sun.\n"
        "Compared with the distant [[Alpha Centauri]] system it is our closest star.",
    ),
    (
        "Solar System",
        "The [[Solar System]] formed about 4.6 billion years ago from a collapsing cloud.\n"
        "See [[Solar System#Formation|the system's formation]] for how the planets grew "
        "from dust.\n"
        "Eight planets, from [[Mercury_(planet)|Mercury]] to [[Neptune]], orbit the [[Sun]].\n"
        "[[Category:Planetary systems]] Between [[Mars]] and [[Jupiter]] lies the "
        "[[Asteroid belt|asteroid belt]].",
    ),
    (
        "Asteroid belt",
        "The [[Asteroid belt]] is a ring of rocky bodies between [[Mars]] and [[Jupiter]].\n"
        "Its largest member is [[Ceres_(dwarf_planet)|Ceres]].\n"
        "Most of every [[Asteroid|asteroid]] catalogued so far orbits inside the belt.",
    ),
    (
        "Moon",
        "The [[Moon]] is [[Earth]]'s only [[Natural satellite|natural satellite]].\n"
        "Its gravity raises [[Tide|tides]] in Earth's oceans, affecting Earth twice a day.\n"
        "[[Apollo 11]] landed the first crew on the Moon in 1969.",
    ),
    (
        "Io (moon)",
        "[[Io_(moon)|Io]] is the most volcanic body in the [[Solar System]] and a moon of "
        "[[Jupiter]].\n"
        "Its surface is repainted by eruptions watched since the [[Voyager program]] flybys.",
    ),
    (
        "Europa (moon)",
        "[[Europa_(moon)|Europa]] is an icy moon of [[Jupiter]] hiding a salty ocean.\n"
        "It was one of the four moons spotted by [[Galileo Galilei]] in 1610.",
    ),
    (
        "Ganymede (moon)",
        "[[Ganymede_(moon)|Ganymede]] is the largest moon in the [[Solar System]], bigger than "
        "[[Mercury_(planet)|Mercury]].\n"
        "It circles [[Jupiter]] and has a magnetic field of its own.",
    ),
    (
        "Callisto (moon)",
        "[[Callisto_(moon)|Callisto]] is the most heavily cratered world orbiting [[Jupiter]].\n"
        "Its ancient surface has barely changed since the [[Solar System]] formed.",
    ),
    (
        "Titan (moon)",
        "[[Titan_(moon)|Titan]] is the largest moon of [[Saturn]] and has a thick orange "
        "atmosphere.\n"
        "The [[Cassini-Huygens]] mission dropped a lander onto Titan in 2005.\n"
        "Rivers of liquid methane carve its surface.",
    ),
    (
        "Enceladus",
        "[[Enceladus]] is a small icy moon of [[Saturn]] that sprays water into space.\n"
        "Plumes from Enceladus feed one of Saturn's faint rings.",
    ),
    (
        "Triton (moon)",
        "[[Triton_(moon)|Triton]] is the largest moon of [[Neptune]] and orbits against its "
        "planet's spin.\n"
        "Geysers of nitrogen erupt through Triton's frozen crust.",
    ),
    (
        "Phobos (moon)",
        "[[Phobos_(moon)|Phobos]] is the larger of the two tiny moons of [[Mars]].\n"
        "It circles Mars faster than the planet rotates.",
    ),
    (
        "Pluto",
        "[[Pluto]] is the best known [[Dwarf planet|dwarf planet]] beyond [[Neptune]].\n"
        "[[Clyde Tombaugh]] discovered Pluto in 1930 after a long photographic search.\n"
        "[[New Horizons]] flew past Pluto in 2015 and revealed a heart-shaped plain.",
    ),
    (
        "Ceres (dwarf planet)",
        "[[Ceres_(dwarf_planet)|Ceres]] is the largest object in the [[Asteroid belt]].\n"
        "It is the only [[Dwarf planet|dwarf planet]] of the inner [[Solar System]].",
    ),
    (
        "Halley's Comet",
        "[[Halley's Comet]] is the most famous [[Comet|comet]], visible from [[Earth]] about "
        "every 76 years.\n"
        "[[Edmond Halley]] predicted its return, and the comet now carries his name.",
    ),
    (
        "Comet",
        "A [[Comet|comet]] is a ball of ice and dust that grows a tail near the [[Sun]].\n"
        "The best known example is [[Halley's Comet]].",
    ),
    (
        "Galileo Galilei",
        "[[Galileo Galilei]] turned a [[Telescope|telescope]] to the sky in 1610.\n"
        "He observed four moons of [[Jupiter]], among them [[Io_(moon)|Io]] and "
        "[[Ganymede_(moon)|Ganymede]].\n"
        "His observations supported [[Heliocentrism|heliocentrism]] against fierce opposition.",
    ),
    (
        "Johannes Kepler",
        "[[Johannes Kepler]] stated the three laws of planetary motion.\n"
        "He showed that each [[Orbit|orbit]] is an ellipse with the [[Sun]] at one focus.\n"
        "Kepler worked from the careful measurements of [[Tycho Brahe]].",
    ),
    (
        "Isaac Newton",
        "[[Isaac Newton]] described [[Gravity|gravity]] as the same force for apples and "
        "planets.\n"
        "His laws of motion explain every [[Orbit|orbit]] in the [[Solar System]].\n"
        "Newton also built the first working reflecting [[Telescope|telescope]].",
    ),
    (
        "Nicolaus Copernicus",
        "[[Nicolaus Copernicus]] placed the [[Sun]] at the center of the universe in 1543.\n"
        "His book started the shift to [[Heliocentrism|heliocentrism]].",
    ),
    (
        "Tycho Brahe",
        "[[Tycho Brahe]] measured planet positions with the naked eye to stunning accuracy.\n"
        "His records let [[Johannes Kepler]] uncover the laws of planetary motion.",
    ),
    (
        "Edmond Halley",
        "[[Edmond Halley]] predicted the return of the [[Comet|comet]] that bears his name.\n"
        "He was a friend of [[Isaac Newton]] and paid for the printing of Newton's great book.\n"
        "[[Halley's Comet]] returned as predicted in 1758, after his death.",
    ),
    (
        "William Herschel",
        "[[William Herschel]] discovered [[Uranus]] in 1781 from his garden.\n"
        "He built the biggest [[Telescope|telescope]] of his century.",
    ),
    (
        "Clyde Tombaugh",
        "[[Clyde Tombaugh]] discovered [[Pluto]] in 1930 at the Lowell Observatory.\n"
        "He compared photographic plates of the night sky, pair by pair.",
    ),
    (
        "Voyager program",
        "The [[Voyager program]] launched two probes in 1977 on a grand tour of the outer "
        "planets.\n"
        "[[Voyager 1]] and [[Voyager 2]] both visited [[Jupiter]] and [[Saturn]].\n"
        "Both probes of the program have now left the bubble of the [[Sun]]'s wind.",
    ),
    (
        "Voyager 1",
        "[[Voyager 1]] is the most distant human-made object.\n"
        "It photographed [[Jupiter]] and [[Saturn]] before heading out of the [[Solar System]].\n"
        "It carries a golden record with sounds of [[Earth]].",
    ),
    (
        "Voyager 2",
        "[[Voyager 2]] is the only probe to have visited [[Uranus]] and [[Neptune]].\n"
        "It was launched under the [[Voyager program]] two weeks before [[Voyager 1]].",
    ),
    (
        "Apollo 11",
        "[[Apollo 11]] landed the first astronauts on the [[Moon]] in July 1969.\n"
        "The crew brought lunar rock back to [[Earth]] for study.\n"
        "Mission control was run by [[NASA]] from Houston.",
    ),
    (
        "Cassini-Huygens",
        "[[Cassini-Huygens]] orbited [[Saturn]] for thirteen years.\n"
        "It dropped the Huygens lander onto [[Titan_(moon)|Titan]] and watched the plumes of "
        "[[Enceladus]].",
    ),
    (
        "New Horizons",
        "[[New Horizons]] made the first flyby of [[Pluto]] in 2015.\n"
        "It then continued into the outer [[Solar System]] to visit a smaller body.",
    ),
    (
        "Hubble Space Telescope",
        "The [[Hubble Space Telescope]] observes the sky from [[Orbit|orbit]] above the "
        "atmosphere.\n"
        "It has measured the age of the universe and watched storms on [[Neptune]].\n"
        "Unlike any ground [[Telescope|telescope]], it sees fine detail without blur.",
    ),
    (
        "Kepler space telescope",
        "The [[Kepler space telescope]] hunted planets around other stars.\n"
        "It was named after [[Johannes Kepler]] and found thousands of new worlds.",
    ),
    (
        "Gravity",
        "[[Gravity]] is the attraction between masses, described by [[Isaac Newton]].\n"
        "It holds every moon in its [[Orbit|orbit]] and every planet near the [[Sun]].",
    ),
    (
        "Orbit",
        "An [[Orbit|orbit]] is the curved path of one body around another under "
        "[[Gravity|gravity]].\n"
        "[[Johannes Kepler]] showed that orbits are ellipses, not circles.",
    ),
    (
        "Telescope",
        "A [[Telescope|telescope]] gathers light to show faint and distant objects.\n"
        "[[Galileo Galilei]] was among the first to point one at the night sky.\n"
        "The term [[refracting telescope was the early design built from two lenses.",
    ),
    (
        "Astronomy",
        "[[Astronomy]] is the study of everything beyond [[Earth]]'s atmosphere.\n"
        "It grew from naked-eye work by [[Tycho Brahe]] into space missions like the "
        "[[Hubble Space Telescope]].",
    ),
    (
        "Asteroid",
        "An [[Asteroid|asteroid]] is a small rocky body orbiting the [[Sun]].\n"
        "Most asteroids crowd the [[Asteroid belt]] between [[Mars]] and [[Jupiter]].",
    ),
    (
        "Natural satellite",
        "A [[Natural satellite|natural satellite]] is any body that orbits a planet or "
        "dwarf planet.\n"
        "[[Earth]] has one, the [[Moon]], while [[Jupiter]] has dozens.",
    ),
    (
        "Planet",
        "A [[Planet|]] is a world massive enough to pull itself round.\n"
        "The [[Solar System]] has eight, from [[Mercury_(planet)|Mercury]] to [[Neptune]].\n"
        "Worlds that fail the last test, like [[Pluto]], are called a [[Dwarf planet|dwarf "
        "planet]] instead.",
    ),
    (
        "Dwarf planet",
        "A [[Dwarf planet|dwarf planet]] is round like a planet but has not cleared its "
        "orbital lane.\n"
        "[[Pluto]] and [[Ceres_(dwarf_planet)|Ceres]] are the best known examples.",
    ),
    (
        "Heliocentrism",
        "[[Heliocentrism]] is the model that puts the [[Sun]], not [[Earth]], at the center.\n"
        "[[Nicolaus Copernicus]] revived the idea and [[Galileo Galilei]] defended it with "
        "evidence.",
    ),
    (
        "Tide",
        "A [[Tide|tide]] is the daily rise and fall of the sea caused by [[Gravity|gravity]].\n"
        "The [[Moon]] raises the strongest tides on [[Earth]], with the [[Sun]] adding a "
        "smaller pull.\n"
        "Spring tides occur when the Moon, [[Earth]] and the Sun line up.",
    ),
]

# (query id, query text, alternative answer sets)
GOLD: list[tuple[str, str, list[list[str]]]] = [
    ("q01", "the smallest planet Mercury orbits closest to the Sun", [["Mercury (planet)"]]),
    ("q02", "Venus is the hottest planet wrapped in thick clouds", [["Venus"]]),
    ("q03", "Earth is the third planet and the only home of life", [["Earth"]]),
    ("q04", "Mars the red planet explored for signs of water", [["Mars"]]),
    ("q05", "Jupiter is the largest planet with the Great Red Spot", [["Jupiter"]]),
    ("q06", "Saturn is famous for bright rings of ice", [["Saturn"]]),
    ("q07", "William Herschel discovered the ice giant Uranus", [["Uranus"], ["William Herschel"]]),
    ("q08", "Neptune is the most distant giant planet", [["Neptune"]]),
    ("q09", "the Sun is the star at the center of the Solar System", [["Sun"], ["Solar System"]]),
    ("q10", "the Moon raises tides in the oceans of Earth", [["Moon"]]),
    ("q11", "Galileo Galilei observed four moons of Jupiter", [["Galileo Galilei"]]),
    ("q12", "Johannes Kepler stated the laws of planetary motion", [["Johannes Kepler"]]),
    ("q13", "Isaac Newton described gravity and the laws of motion", [["Isaac Newton"]]),
    ("q14", "Nicolaus Copernicus placed the Sun at the center", [["Nicolaus Copernicus"], ["Heliocentrism"]]),
    ("q15", "Edmond Halley predicted the return of a famous comet", [["Edmond Halley"]]),
    ("q16", "Pluto was discovered by Clyde Tombaugh in 1930", [["Pluto"], ["Clyde Tombaugh"]]),
    ("q17", "Voyager 2 is the only probe to visit Uranus and Neptune", [["Voyager 2"]]),
    ("q18", "Apollo 11 landed the first astronauts on the Moon", [["Apollo 11"]]),
    ("q19", "the Hubble Space Telescope observes the sky from orbit", [["Hubble Space Telescope"]]),
    ("q20", "Titan is the largest moon of Saturn with a thick atmosphere", [["Titan (moon)"]]),
]

CONFIG = """\
# toy benchmark: 50-document corpus with 20 gold queries
input = toy_wikitext.jsonl
raw = true
gold = toy_gold.jsonl
mode = pthl
scorer = lexical
beam = 10
max_titles = 5
max_len = 64
k = 1,5,10
seed = 13
sample_n = 64
"""


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    default_dir = Path(__file__).resolve().parent.parent / "fixtures"
    parser.add_argument("--out-dir", type=Path, default=default_dir)
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    corpus_path = args.out_dir / "toy_wikitext.jsonl"
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for title, wikitext in DOCS:
            fh.write(json.dumps({"title": title, "wikitext": wikitext}, ensure_ascii=False))
            fh.write("\n")

    gold_path = args.out_dir / "toy_gold.jsonl"
    with open(gold_path, "w", encoding="utf-8") as fh:
        for qid, query, answer_sets in GOLD:
            record = {"id": qid, "query": query, "answer_sets": answer_sets}
            fh.write(json.dumps(record, ensure_ascii=False))
            fh.write("\n")

    config_path = args.out_dir / "toy.toml"
    config_path.write_text(CONFIG, encoding="utf-8")

    print(f"wrote {len(DOCS)} documents -> {corpus_path}")
    print(f"wrote {len(GOLD)} gold queries -> {gold_path}")
    print(f"wrote config -> {config_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
