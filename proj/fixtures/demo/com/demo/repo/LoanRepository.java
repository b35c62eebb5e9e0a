package com.demo.repo;

import com.demo.model.Loan;
import com.demo.model.Member;
import java.time.LocalDate;
import java.util.ArrayList;
import java.util.List;

public class LoanRepository extends InMemoryRepository<Loan> {
    public List<Loan> openLoans() {
        List<Loan> out = new ArrayList<>();
        for (Loan l : findAll()) {
            if (!l.isReturned()) out.add(l);
        }
        return out;
    }

    public List<Loan> overdue(LocalDate today) {
        List<Loan> out = new ArrayList<>();
        for (Loan l : openLoans()) {
            if (l.overdueDays(today) > 0) {
                out.add(l);
            }
        }
        return out;
    }

    public List<Loan> forMember(Member member) {
        List<Loan> out = new ArrayList<>();
        for (Loan l : findAll()) {
            if (l.getMember().equals(member)) out.add(l);
        }
        return out;
    }
}
