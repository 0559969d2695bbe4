"""Regenerate the bundled name lexicon and transliteration table.

Writes ``name_gender.csv`` and ``transliteration.csv`` into the package data
directory. Names that appear in both gender lists are dropped, and every
transliteration key must be absent from the lexicon so the fallback path is
actually exercised.

    python scripts/build_name_lexicon.py
"""
import csv
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "banglish_demand" / "data"

male = """
abdul abdullah abid abir abrar adib adil adnan afif afnan afzal ahad ahmed ahnaf ahsan akash akbar akib akram alamgir alauddin alif alim altaf amin aminul amir amit anam anik anis anisur anwar apurbo arafat arif arifur arman arnob asad asadul ashik ashiq ashraf ashraful asif ataur atik atiq ayan azad azharul aziz babul badal bashar bashir belal bijoy bilal biplob bishal bulbul dalim delwar dipu ehsan emon enamul ershad faisal faiz fahad fahim fakhrul farhan farid faruk faruque fazlul feroz firoz galib golam habib habibur hafiz hamid hanif harun hasan hasib hassan helal hossain humayun ibrahim ifty imran imtiaz iqbal irfan ishtiaq islam ismail jahangir jahid jakir jamal jamil jasim javed jewel jibon jihad joy jubayer junaid kabir kamal kamrul karim kawsar khaled khairul kibria liton mahbub mahdi mahfuz mahin mahmud mainul majid mamun manik masud mehedi milon minhaz mirza mizan mizanur moin momin monir moniruzzaman montu mostafa mosharraf motin mubin munna murad musa mushfiq mustafizur nadim nafis naim nasir nayeem nazmul niaz nihal nirob noman noor nurul obaid omar omor pavel polash rafi rafiq rafiul rahat rahim rahman raihan rajib rakib ramim rana rashed rasel rashid raqib razib razu reaz reza riad riaz riyad robin rony rubel rafsan sabbir sabir sadat sadik safayet saiful sajib sajid sajjad sakib salam salauddin salman samir sami sanjid saif saifur shafiq shahed shahid shahin shahriar shaheen shakil shamim shams shanto sharif shawon shihab shimul shohag shohel shovon shuvo siam sohel sojib sumon tahmid tamim tanim tanvir tarek tareq tariq tasnim_m tauhid touhid tuhin ullah wahid wasim yasin yeasin yousuf zahid zahir zakir zaman zia ziaul zubair sourav saurav sujon swapon tapu titu topu rifat sifat shadman sadman nafiz ratul rahul rony_m jony polok pranto
""".split()
female = """
afia afroza aklima alima amena amina anika anisa anjuman anny antara anu arifa arpita asma ayesha bably beauty bilkis bithi bonna champa chaity dilruba dipa dola eva farah fardousi farhana fariha farida fatema fatima fatiha fouzia habiba hafsa halima hasina humaira ismat israt jahanara jannat jannatul jarin jasmin jerin jesmin joya jui jumana keya khadija koli laboni labonno laila lamia liza lubna lucky mahbuba mahfuza mahi maisha maliha marium marjana maria masuma mim mitu moushumi mousumi munira mukta nadia nafisa nahid_f naila najma nargis nasima nasrin nazia nazmun nila nilufar nipa nishat nitu nusrat nupur oishi orpa parvin parveen poly popy priya priyanka puja rabeya rahima raisa rashida razia rehana rina rima riya rokeya romana rozina rubina ruma rumana rupa sabina sabiha sadia safia sahana saima sajeda salma samia samira sanjida sathi selina shabnam shahana shahnaz shamima shampa shanta sharmin shathi shila shimu shirin shoma shompa sonia sultana suma sumaiya sumi sunzida supti surovi swarna tahmina tahsin tamanna tania tanjila tanzila tasnim tasmia tithi tonni trisha umme urmi yasmin zahra zakia zannat zarin zinat moriom mehnaz mehjabin nabila nazifa ruksana sabrina samiha shreya taslima tisha farzana jannati sharmila poppy pinky rumki kakoli lima
""".split()
# suffixes mark deliberate duplicates across the lists
male = [m.replace("_m", "") for m in male]
female = [f.replace("_f", "") for f in female]
# names used for both genders are left out
ambiguous = set(male) & set(female) | {"tasnim", "nahid", "rony"}
male = sorted(set(male) - ambiguous)
female = sorted(set(female) - ambiguous)
bangla = {
 "সাব্বির":"male","রহিম":"male","করিম":"male","হাসান":"male","জামাল":"male","কামাল":"male","রাকিব":"male","শাকিল":"male","আরিফ":"male","তানভীর":"male","মাহমুদ":"male","রাশেদ":"male","শফিক":"male","মামুন":"male","সোহেল":"male","ইমরান":"male","তারেক":"male","জাহিদ":"male","নাঈম":"male","রাসেল":"male","শুভ":"male",
 "ফাতেমা":"female","আয়েশা":"female","নিশাত":"female","নুসরাত":"female","সাদিয়া":"female","তানিয়া":"female","শারমিন":"female","নাসরিন":"female","ফারহানা":"female","জান্নাত":"female","রুমানা":"female","সুমাইয়া":"female","মরিয়ম":"female","খাদিজা":"female","তাহমিনা":"female","ইসরাত":"female","মিম":"female","লাবনী":"female","সুলতানা":"female",
}
# romanized spelling variants not in the lexicon, routed through Bangla script
translit = {
 "shabbir":"সাব্বির","sabbeer":"সাব্বির","raheem":"রহিম","kareem":"করিম","hasaan":"হাসান","jamaal":"জামাল","kamaal":"কামাল","rakeeb":"রাকিব","shakeel":"শাকিল","aarif":"আরিফ","tanveer":"তানভীর","mahmood":"মাহমুদ","rashaed":"রাশেদ","shafeeq":"শফিক","mamoon":"মামুন","shohail":"সোহেল","emran":"ইমরান","tareque":"তারেক","zaheed":"জাহিদ","naeem":"নাঈম","russel":"রাসেল","subho":"শুভ",
 "fatma":"ফাতেমা","fathema":"ফাতেমা","aysha":"আয়েশা","aisha":"আয়েশা","nishaat":"নিশাত","nusraat":"নুসরাত","sadiya":"সাদিয়া","taniya":"তানিয়া","sharmeen":"শারমিন","nasreen":"নাসরিন","farhaana":"ফারহানা","jannaat":"জান্নাত","rumaana":"রুমানা","sumaya":"সুমাইয়া","maryam":"মরিয়ম","khadiza":"খাদিজা","tahmeena":"তাহমিনা","esrat":"ইসরাত","meem":"মিম","labony":"লাবনী","sultaana":"সুলতানা",
}


def write(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main():
    rows = [(n, "male") for n in male] + [(n, "female") for n in female] + sorted(bangla.items())
    lexicon = {n for n, _ in rows}
    assert not set(translit) & lexicon, set(translit) & lexicon
    assert set(translit.values()) <= set(bangla)
    write(DATA / "name_gender.csv", ["name", "gender"], rows)
    write(DATA / "transliteration.csv", ["romanized", "native"], sorted(translit.items()))
    print(f"{len(male)} male, {len(female)} female, {len(rows)} lexicon rows, {len(translit)} transliterations")


if __name__ == "__main__":
    main()
