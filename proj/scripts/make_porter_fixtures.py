#!/usr/bin/env python3
"""Regenerates tests/data/porter_pairs.tsv.

The stemmer below is a transcription of the public-domain reference
implementation of the Porter stemming algorithm (the ANSI C version
distributed by its author, ported to Python by Vivake Gupta). It is kept
separate from the C++ implementation on purpose: the fixture file is the
contract both sides must agree on.

Run from the repository root:  python3 scripts/make_porter_fixtures.py
"""

import os


class PorterStemmer:
    def __init__(self):
        self.b = ""
        self.k = 0
        self.k0 = 0
        self.j = 0

    def cons(self, i):
        if self.b[i] in "aeiou":
            return 0
        if self.b[i] == "y":
            if i == self.k0:
                return 1
            return not self.cons(i - 1)
        return 1

    def m(self):
        n = 0
        i = self.k0
        while 1:
            if i > self.j:
                return n
            if not self.cons(i):
                break
            i = i + 1
        i = i + 1
        while 1:
            while 1:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i = i + 1
            i = i + 1
            n = n + 1
            while 1:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i = i + 1
            i = i + 1

    def vowelinstem(self):
        for i in range(self.k0, self.j + 1):
            if not self.cons(i):
                return 1
        return 0

    def doublec(self, j):
        if j < (self.k0 + 1):
            return 0
        if self.b[j] != self.b[j - 1]:
            return 0
        return self.cons(j)

    def cvc(self, i):
        if (
            i < (self.k0 + 2)
            or not self.cons(i)
            or self.cons(i - 1)
            or not self.cons(i - 2)
        ):
            return 0
        if self.b[i] in "wxy":
            return 0
        return 1

    def ends(self, s):
        length = len(s)
        if s[length - 1] != self.b[self.k]:
            return 0
        if length > (self.k - self.k0 + 1):
            return 0
        if self.b[self.k - length + 1 : self.k + 1] != s:
            return 0
        self.j = self.k - length
        return 1

    def setto(self, s):
        length = len(s)
        self.b = self.b[: self.j + 1] + s + self.b[self.j + length + 1 :]
        self.k = self.j + length

    def r(self, s):
        if self.m() > 0:
            self.setto(s)

    def step1ab(self):
        if self.b[self.k] == "s":
            if self.ends("sses"):
                self.k = self.k - 2
            elif self.ends("ies"):
                self.setto("i")
            elif self.b[self.k - 1] != "s":
                self.k = self.k - 1
        if self.ends("eed"):
            if self.m() > 0:
                self.k = self.k - 1
        elif (self.ends("ed") or self.ends("ing")) and self.vowelinstem():
            self.k = self.j
            if self.ends("at"):
                self.setto("ate")
            elif self.ends("bl"):
                self.setto("ble")
            elif self.ends("iz"):
                self.setto("ize")
            elif self.doublec(self.k):
                self.k = self.k - 1
                ch = self.b[self.k]
                if ch in "lsz":
                    self.k = self.k + 1
            elif self.m() == 1 and self.cvc(self.k):
                self.setto("e")

    def step1c(self):
        if self.ends("y") and self.vowelinstem():
            self.b = self.b[: self.k] + "i" + self.b[self.k + 1 :]

    def step2(self):
        if self.b[self.k - 1] == "a":
            if self.ends("ational"):
                self.r("ate")
            elif self.ends("tional"):
                self.r("tion")
        elif self.b[self.k - 1] == "c":
            if self.ends("enci"):
                self.r("ence")
            elif self.ends("anci"):
                self.r("ance")
        elif self.b[self.k - 1] == "e":
            if self.ends("izer"):
                self.r("ize")
        elif self.b[self.k - 1] == "l":
            if self.ends("bli"):
                self.r("ble")
            elif self.ends("alli"):
                self.r("al")
            elif self.ends("entli"):
                self.r("ent")
            elif self.ends("eli"):
                self.r("e")
            elif self.ends("ousli"):
                self.r("ous")
        elif self.b[self.k - 1] == "o":
            if self.ends("ization"):
                self.r("ize")
            elif self.ends("ation"):
                self.r("ate")
            elif self.ends("ator"):
                self.r("ate")
        elif self.b[self.k - 1] == "s":
            if self.ends("alism"):
                self.r("al")
            elif self.ends("iveness"):
                self.r("ive")
            elif self.ends("fulness"):
                self.r("ful")
            elif self.ends("ousness"):
                self.r("ous")
        elif self.b[self.k - 1] == "t":
            if self.ends("aliti"):
                self.r("al")
            elif self.ends("iviti"):
                self.r("ive")
            elif self.ends("biliti"):
                self.r("ble")
        elif self.b[self.k - 1] == "g":
            if self.ends("logi"):
                self.r("log")

    def step3(self):
        if self.b[self.k] == "e":
            if self.ends("icate"):
                self.r("ic")
            elif self.ends("ative"):
                self.r("")
            elif self.ends("alize"):
                self.r("al")
        elif self.b[self.k] == "i":
            if self.ends("iciti"):
                self.r("ic")
        elif self.b[self.k] == "l":
            if self.ends("ical"):
                self.r("ic")
            elif self.ends("ful"):
                self.r("")
        elif self.b[self.k] == "s":
            if self.ends("ness"):
                self.r("")

    def step4(self):
        if self.b[self.k - 1] == "a":
            if self.ends("al"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "c":
            if self.ends("ance"):
                pass
            elif self.ends("ence"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "e":
            if self.ends("er"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "i":
            if self.ends("ic"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "l":
            if self.ends("able"):
                pass
            elif self.ends("ible"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "n":
            if self.ends("ant"):
                pass
            elif self.ends("ement"):
                pass
            elif self.ends("ment"):
                pass
            elif self.ends("ent"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "o":
            if self.ends("ion") and (self.b[self.j] == "s" or self.b[self.j] == "t"):
                pass
            elif self.ends("ou"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "s":
            if self.ends("ism"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "t":
            if self.ends("ate"):
                pass
            elif self.ends("iti"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "u":
            if self.ends("ous"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "v":
            if self.ends("ive"):
                pass
            else:
                return
        elif self.b[self.k - 1] == "z":
            if self.ends("ize"):
                pass
            else:
                return
        else:
            return
        if self.m() > 1:
            self.k = self.j

    def step5(self):
        self.j = self.k
        if self.b[self.k] == "e":
            a = self.m()
            if a > 1 or (a == 1 and not self.cvc(self.k - 1)):
                self.k = self.k - 1
        if self.b[self.k] == "l" and self.doublec(self.k) and self.m() > 1:
            self.k = self.k - 1

    def stem(self, p):
        self.b = p
        self.k = len(p) - 1
        self.k0 = 0
        if self.k <= self.k0 + 1:
            return self.b
        self.step1ab()
        self.step1c()
        self.step2()
        self.step3()
        self.step4()
        self.step5()
        return self.b[self.k0 : self.k + 1]


# Words quoted in the algorithm's published description, kept verbatim so the
# fixture always exercises every documented rule at least once.
CLASSIC = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing
happy sky relational conditional rational valenci hesitanci digitizer
conformabli radicalli differentli vileli analogousli vietnamization predication
operator feudalism decisiveness hopefulness callousness formaliti sensitiviti
sensibiliti triplicate formative formalize electriciti electrical hopeful
goodness revival allowance inference airliner gyroscopic adjustable defensible
irritant replacement adjustment dependent adoption homologou communism activate
angulariti homologous effective bombardment probate rate cease controll roll
generalizations oscillators
""".split()

BASES = """
accept access account act adapt add adjust admire adopt advance advertise
advise affect agree aid aim alert align allow amaze amuse analyze anger
announce annoy answer appeal appear apply appreciate approach approve argue
arrange arrive ask assemble assign assist assume assure attach attack attempt
attend attract avoid awake back bake balance band base bat bate beg behave
believe belong bend benefit bet bind bite blame blend bless block bloom blot
blur board boast boil bolt bomb book boost border bore borrow bounce bow box
brake brand breathe breed brew bribe brighten broil browse brush bubble buckle
budge build bump burn bury buzz calculate call calm camp care carve cause
celebrate center challenge change charge chase cheat check cheer chew chip
choke chop claim clap classify clean clear click climb clip close coach coil
collect color comb combine command comment communicate compare compete
complain complete compress compute concentrate concern conclude conduct
confess configure confirm confuse connect consider consist contain continue
contract contribute control convert cook copy correct cough count cover crack
crash crawl create cross crush cry cure curl curve cycle damage dance dare
darken dash deal decay deceive decide decorate decrease dedicate defend define
delay delight deliver demand depend describe desert deserve design desire
destroy detect develop die differ dig direct disagree disappear disapprove
discover discuss dislike divide dominate double doubt drag drain dream dress
drip drop drown drum dry dust earn ease educate elect embarrass employ empty
enclose encourage end engage enjoy enter entertain escape estimate examine
excite excuse exercise exist expand expect explain explode express extend face
fade fail fancy fasten fear fetch file fill film fire fit fix flap flash float
flood flow flower fold follow force form found frame frighten fry gather gaze
glow glue grab grate grease greet grin grip groan guarantee guard guess guide
hammer hand handle hang happen harass harm hate haunt head heal heap heat help
hook hop hope hover hug hum hunt hurry identify ignore imagine impress improve
include increase influence inform inject injure instruct intend interest
interfere interrupt introduce invent invite irritate itch jail jam jog join
joke judge juggle jump kick kill kiss kneel knit knock knot label land last
laugh launch learn level license lick lie lighten like list listen live load
lock log long look love man manage march mark marry match mate matter measure
meddle melt memorize mend mess milk mine miss mix moan moor mourn move muddle
mug multiply murder name need nest nod note notice number object observe
obtain occur offend offer open order overflow owe own pack paddle paint park
part pass paste pat pause peck pedal peel perform permit phone pick pinch
pine place plan plant play please plug point poke polish pop possess post pour
practice praise pray preach precede predict prefer prepare present preserve
press pretend prevent prick print produce program promise protect provide pull
pump punch puncture punish push question queue race radiate rain raise reach
realize receive recognize record reduce reflect refuse regret reign reject
rejoice relate relax release rely remain remember remind remove repair repeat
replace reply report reproduce request rescue retire return rhyme rinse risk
rob rock roll rot rub ruin rule rush sack sail satisfy save saw scare scatter
scold scorch scrape scratch scream screw scribble scrub seal search separate
serve settle shade share shave shelter shiver shock shop shrug sigh sign signal
sin sip ski skip slap slip slow smash smell smile smoke snatch sneeze sniff
snore snow soak soothe sound spare spark spell spill spoil spot spray sprout
squash squeak squeal squeeze stain stamp stare start state stay steer step stir
stitch stop store strap strengthen stretch strip stroke stuff subtract succeed
suck suffer suggest suit supply support suppose surprise surround suspect
suspend switch talk tame tap taste tease telephone tempt terrify test thank
thaw tick tickle tie time tip tire touch tour tow trace trade train transport
trap travel treat tremble trick trip trot trouble trust try tug tumble turn
twist type undress unfasten unite unlock unpack untidy use vanish visit wail
wait walk wander want warm wash waste watch water wave weigh welcome whine
whip whirl whisper whistle wink wipe wish wobble wonder work worry wrap wreck
wrestle wriggle yawn yell zip zoom battery screen phone camera speaker button
charger cable keyboard display resolution processor memory storage shipping
delivery service price quality design weight size color sound volume signal
network system software update application interface experience performance
durability reliability functionality capability compatibility sensitivity
""".split()

SUFFIXES = [
    "", "s", "es", "ed", "ing", "er", "ers", "ation", "ations", "ness",
    "ment", "ments", "ful", "fulness", "ousness", "ive", "iveness", "ly",
    "ization", "izer", "ities", "ity", "al", "alism", "aliti", "ational",
    "able", "ibility", "ion", "ions", "ance", "ence", "ate", "ator", "ous",
    "ize", "ized", "izing", "iciti", "ical", "icate", "ative",
]


def main():
    words = set(CLASSIC)
    # Every base keeps its bare form plus a rotating window of suffixes, so
    # the file stays small while every suffix still appears many times.
    for bi, base in enumerate(BASES):
        picks = [""] + [SUFFIXES[(bi * 7 + i) % len(SUFFIXES)] for i in range(8)]
        for suf in picks:
            w = base + suf
            if w.isalpha() and len(w) >= 2:
                words.add(w)
    stemmer = PorterStemmer()
    out = os.path.join(os.path.dirname(__file__), "..", "tests", "data",
                       "porter_pairs.tsv")
    out = os.path.normpath(out)
    os.makedirs(os.path.dirname(out), exist_ok=True)
    with open(out, "w", encoding="utf-8") as fh:
        for w in sorted(words):
            fh.write(f"{w}\t{stemmer.stem(w)}\n")
    print(f"wrote {len(words)} pairs to {out}")


if __name__ == "__main__":
    main()
